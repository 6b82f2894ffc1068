#include "domainsmith/unicode.hpp"

#include <algorithm>

#include "domainsmith/errors.hpp"

namespace domainsmith::unicode {

namespace {

constexpr char32_t kHangulSBase = 0xAC00;
constexpr char32_t kHangulLBase = 0x1100;
constexpr char32_t kHangulVBase = 0x1161;
constexpr char32_t kHangulTBase = 0x11A7;
constexpr int kHangulLCount = 19;
constexpr int kHangulVCount = 21;
constexpr int kHangulTCount = 28;
constexpr int kHangulNCount = kHangulVCount * kHangulTCount;
constexpr int kHangulSCount = kHangulLCount * kHangulNCount;

bool in_ranges(const tables::CodepointRange* ranges, std::size_t n, char32_t cp) {
  auto it = std::upper_bound(ranges, ranges + n, cp,
                             [](char32_t v, const tables::CodepointRange& r) { return v < r.lo; });
  return it != ranges && (it - 1)->hi >= cp;
}

const tables::DecompositionEntry* find_decomposition(char32_t cp) {
  auto* begin = tables::kCanonicalDecompositions;
  auto* end = begin + tables::kCanonicalDecompositionCount;
  auto it = std::lower_bound(begin, end, cp,
                             [](const tables::DecompositionEntry& e, char32_t v) { return e.cp < v; });
  return (it != end && it->cp == cp) ? it : nullptr;
}

char32_t find_composition(char32_t starter, char32_t combining) {
  // Hangul LV and LVT composition is algorithmic.
  if (starter >= kHangulLBase && starter < kHangulLBase + kHangulLCount &&
      combining >= kHangulVBase && combining < kHangulVBase + kHangulVCount) {
    return kHangulSBase +
           ((starter - kHangulLBase) * kHangulVCount + (combining - kHangulVBase)) * kHangulTCount;
  }
  if (starter >= kHangulSBase && starter < kHangulSBase + kHangulSCount &&
      (starter - kHangulSBase) % kHangulTCount == 0 && combining > kHangulTBase &&
      combining < kHangulTBase + kHangulTCount) {
    return starter + (combining - kHangulTBase);
  }
  auto* begin = tables::kCompositionPairs;
  auto* end = begin + tables::kCompositionPairCount;
  auto it = std::lower_bound(begin, end, std::make_pair(starter, combining),
                             [](const tables::CompositionEntry& e, const std::pair<char32_t, char32_t>& v) {
                               return e.starter != v.first ? e.starter < v.first : e.combining < v.second;
                             });
  if (it != end && it->starter == starter && it->combining == combining) return it->composed;
  return 0;
}

void decompose_into(char32_t cp, std::vector<char32_t>& out) {
  if (cp >= kHangulSBase && cp < kHangulSBase + kHangulSCount) {
    char32_t s = cp - kHangulSBase;
    out.push_back(kHangulLBase + s / kHangulNCount);
    out.push_back(kHangulVBase + (s % kHangulNCount) / kHangulTCount);
    char32_t t = s % kHangulTCount;
    if (t != 0) out.push_back(kHangulTBase + t);
    return;
  }
  if (const auto* d = find_decomposition(cp)) {
    decompose_into(d->first, out);
    if (d->second != 0) decompose_into(d->second, out);
    return;
  }
  out.push_back(cp);
}

}  // namespace

std::optional<char32_t> decode_utf8(std::string_view text, std::size_t& pos) {
  if (pos >= text.size()) return std::nullopt;
  const auto* s = reinterpret_cast<const unsigned char*>(text.data());
  unsigned char b0 = s[pos];
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return std::nullopt;
  }
  if (pos + len > text.size()) return std::nullopt;
  for (int i = 1; i < len; ++i) {
    unsigned char b = s[pos + i];
    if ((b & 0xC0) != 0x80) return std::nullopt;
    cp = (cp << 6) | (b & 0x3F);
  }
  // Reject overlong forms, surrogates, and out-of-range values.
  static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return std::nullopt;
  pos += len;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode_utf8(const std::vector<char32_t>& cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) append_utf8(out, cp);
  return out;
}

std::vector<char32_t> decode_utf8_or_throw(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto cp = decode_utf8(text, pos);
    if (!cp) throw DecodeError("invalid UTF-8 at byte offset " + std::to_string(pos));
    out.push_back(*cp);
  }
  return out;
}

std::optional<std::size_t> find_invalid_utf8(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t before = pos;
    if (!decode_utf8(text, pos)) return before;
  }
  return std::nullopt;
}

bool is_letter(char32_t cp) {
  return in_ranges(tables::kLetterRanges, tables::kLetterRangeCount, cp);
}

bool is_basic_latin_letter(char32_t cp) {
  return (cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z');
}

bool is_arabic_letter(char32_t cp) {
  // Arabic script blocks: core, Supplement, Extended-A, Presentation Forms A/B.
  bool in_block = (cp >= 0x0600 && cp <= 0x06FF) || (cp >= 0x0750 && cp <= 0x077F) ||
                  (cp >= 0x08A0 && cp <= 0x08FF) || (cp >= 0xFB50 && cp <= 0xFDFF) ||
                  (cp >= 0xFE70 && cp <= 0xFEFF);
  return in_block && is_letter(cp);
}

std::uint8_t combining_class(char32_t cp) {
  auto* begin = tables::kCombiningClasses;
  auto* end = begin + tables::kCombiningClassCount;
  auto it = std::lower_bound(begin, end, cp,
                             [](const tables::CombiningClassEntry& e, char32_t v) { return e.cp < v; });
  return (it != end && it->cp == cp) ? it->ccc : 0;
}

char32_t simple_lowercase(char32_t cp) {
  auto* begin = tables::kSimpleLowercase;
  auto* end = begin + tables::kSimpleLowercaseCount;
  auto it = std::lower_bound(begin, end, cp,
                             [](const tables::LowercaseEntry& e, char32_t v) { return e.cp < v; });
  return (it != end && it->cp == cp) ? it->lower : cp;
}

std::string nfc(std::string_view text) {
  std::vector<char32_t> cps = decode_utf8_or_throw(text);

  // 1. Full canonical decomposition.
  std::vector<char32_t> decomposed;
  decomposed.reserve(cps.size());
  for (char32_t cp : cps) decompose_into(cp, decomposed);

  // 2. Canonical ordering: stable-sort runs of nonzero combining class.
  for (std::size_t i = 1; i < decomposed.size(); ++i) {
    std::uint8_t ccc = combining_class(decomposed[i]);
    if (ccc == 0) continue;
    std::size_t j = i;
    while (j > 0 && combining_class(decomposed[j - 1]) > ccc) {
      std::swap(decomposed[j - 1], decomposed[j]);
      --j;
    }
  }

  // 3. Canonical composition.
  std::vector<char32_t> out;
  out.reserve(decomposed.size());
  std::ptrdiff_t last_starter = -1;
  std::uint8_t last_ccc = 0;
  for (char32_t cp : decomposed) {
    std::uint8_t ccc = combining_class(cp);
    if (last_starter >= 0) {
      // Composable when not blocked by an intervening mark of >= class.
      bool blocked = (last_ccc != 0 && last_ccc >= ccc) ||
                     (ccc == 0 && static_cast<std::size_t>(last_starter) + 1 != out.size());
      if (!blocked) {
        if (char32_t composed = find_composition(out[last_starter], cp)) {
          out[last_starter] = composed;
          continue;
        }
      }
    }
    if (ccc == 0) {
      last_starter = static_cast<std::ptrdiff_t>(out.size());
      last_ccc = 0;
    } else {
      last_ccc = ccc;
    }
    out.push_back(cp);
  }
  return encode_utf8(out);
}

std::string lowercase(std::string_view text) {
  std::vector<char32_t> cps = decode_utf8_or_throw(text);
  for (char32_t& cp : cps) cp = simple_lowercase(cp);
  return encode_utf8(cps);
}

}  // namespace domainsmith::unicode
