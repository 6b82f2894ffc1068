#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace domainsmith {

struct SubwordMeta {
  std::uint64_t vocab_size = 0;
  bool has_byte_fallback = false;
  bool split_digits = true;
  std::string piece_prefix = "\xE2\x96\x81";  // "▁" word-boundary marker
};

// Unigram subword model: pieces with log-probabilities. Immutable after
// construction; segmentation is a pure function and thread-safe.
class SubwordModel {
 public:
  // Two-column TSV: piece TAB log-probability. vocab_size = row count;
  // byte fallback is detected from the presence of all 256 <0xNN> pieces.
  static SubwordModel load(const std::string& path);

  static SubwordModel from_pieces(const std::vector<std::pair<std::string, double>>& pieces,
                                  SubwordMeta meta = {});

  const SubwordMeta& meta() const { return meta_; }
  SubwordMeta& meta() { return meta_; }
  const std::map<std::string, double>& pieces() const { return pieces_; }
  std::optional<double> log_prob(std::string_view piece) const;
  double byte_log_prob(unsigned char b) const { return byte_logp_[b]; }
  std::string checksum() const;

 private:
  friend std::vector<std::string> segment(std::string_view, const SubwordModel&);
  struct Trie;

  std::map<std::string, double> pieces_;
  SubwordMeta meta_;
  double byte_logp_[256] = {};
  std::shared_ptr<const Trie> trie_;

  void finish();
};

// Viterbi segmentation: maximizes summed piece log-probability over the
// lattice of vocabulary matches. Spaces become the boundary marker first;
// with split_digits each digit is isolated. Characters no piece covers are
// emitted as <0xNN> byte pieces when the model has byte fallback, otherwise
// a CoverageError names the character. Ties prefer fewer pieces, then the
// leftmost-longest piece.
std::vector<std::string> segment(std::string_view text, const SubwordModel& model);

// Inverse of segment: byte-fallback runs are decoded as UTF-8 and boundary
// markers become spaces again.
std::string desegment(const std::vector<std::string>& pieces, const SubwordModel& model);
std::string desegment(const std::vector<std::string>& pieces,
                      const std::string& piece_prefix = "\xE2\x96\x81");

// Reserved tokens first, then pieces by descending log-probability with
// lexicographic tie order. When a reserved token collides with a piece the
// piece is skipped if force_dedup, otherwise it is an error.
extern const std::vector<std::string> kDefaultReservedTokens;  // pad, unk, bos, eos
void export_vocab(const SubwordModel& model, const std::vector<std::string>& reserved,
                  const std::string& path, bool force_dedup = false);

}  // namespace domainsmith
