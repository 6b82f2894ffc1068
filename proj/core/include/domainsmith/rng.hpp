#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace domainsmith {

// All randomized operations draw from std::mt19937_64 (bit-exact across
// platforms by the standard) through the bounded-draw and shuffle routines
// below, so identical seeds give identical results everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform draw in [0, n) by rejection sampling on the top multiple of n.
  std::uint64_t bounded(std::uint64_t n);

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(bounded(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

// Mixes a run seed with a call index into a per-call seed (splitmix64 of the
// xor with the index scaled by the golden-ratio constant).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

std::uint64_t splitmix64(std::uint64_t x);

// k distinct indices from [0, n), uniform without replacement (Floyd's
// algorithm), returned in ascending order.
std::vector<std::uint64_t> sample_indices(std::uint64_t n, std::uint64_t k, Rng& rng);

}  // namespace domainsmith
