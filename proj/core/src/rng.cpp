#include "domainsmith/rng.hpp"

#include <algorithm>
#include <unordered_set>

#include "domainsmith/errors.hpp"

namespace domainsmith {

std::uint64_t Rng::bounded(std::uint64_t n) {
  if (n == 0) throw DataError("bounded draw from empty range");
  std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    std::uint64_t v = gen_();
    if (v >= threshold) return v % n;
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ (index * 0x9E3779B97F4A7C15ULL));
}

std::vector<std::uint64_t> sample_indices(std::uint64_t n, std::uint64_t k, Rng& rng) {
  if (k > n) throw SizeError("sample of " + std::to_string(k) + " from population of " + std::to_string(n));
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(k));
  for (std::uint64_t i = n - k; i < n; ++i) {
    std::uint64_t j = rng.bounded(i + 1);
    if (!chosen.insert(j).second) chosen.insert(i);
  }
  std::vector<std::uint64_t> out(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace domainsmith
