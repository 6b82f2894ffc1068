#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace domainsmith::unicode {

// Tables generated from the Unicode character database
// (tests/oracle/gen_unicode_tables.py). Hangul syllables are handled
// algorithmically and do not appear in the decomposition/composition tables.
namespace tables {

struct CodepointRange {
  char32_t lo;
  char32_t hi;
};
struct CombiningClassEntry {
  char32_t cp;
  std::uint8_t ccc;
};
struct DecompositionEntry {
  char32_t cp;
  char32_t first;
  char32_t second;  // 0 for singleton decompositions
};
struct CompositionEntry {
  char32_t starter;
  char32_t combining;
  char32_t composed;
};
struct LowercaseEntry {
  char32_t cp;
  char32_t lower;
};

extern const CodepointRange kLetterRanges[];
extern const std::size_t kLetterRangeCount;
extern const CombiningClassEntry kCombiningClasses[];
extern const std::size_t kCombiningClassCount;
extern const DecompositionEntry kCanonicalDecompositions[];
extern const std::size_t kCanonicalDecompositionCount;
extern const CompositionEntry kCompositionPairs[];
extern const std::size_t kCompositionPairCount;
extern const LowercaseEntry kSimpleLowercase[];
extern const std::size_t kSimpleLowercaseCount;

}  // namespace tables

// ---- UTF-8 ----

// Decodes the code point starting at byte `pos`. Advances `pos` past it.
// Returns nullopt on malformed input (pos is left unchanged).
std::optional<char32_t> decode_utf8(std::string_view text, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);
std::string encode_utf8(const std::vector<char32_t>& cps);

// Decodes a whole string; throws DecodeError naming the byte offset.
std::vector<char32_t> decode_utf8_or_throw(std::string_view text);

// Returns the byte offset of the first invalid sequence, or nullopt if valid.
std::optional<std::size_t> find_invalid_utf8(std::string_view text);

// ---- Character classes ----

bool is_letter(char32_t cp);
bool is_basic_latin_letter(char32_t cp);  // A-Z a-z
bool is_arabic_letter(char32_t cp);       // letters in the Arabic script blocks
std::uint8_t combining_class(char32_t cp);
char32_t simple_lowercase(char32_t cp);

// ---- Normalization ----

// Canonical composition normal form. Used by the filter stage when
// normalize_before_compare is enabled.
std::string nfc(std::string_view text);

// Lowercases via the simple one-to-one case mapping.
std::string lowercase(std::string_view text);

}  // namespace domainsmith::unicode
