#pragma once

#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "domainsmith/rng.hpp"

namespace domainsmith {

// Provenance labels carried by every segment pair.
enum class Tag : std::uint8_t {
  authentic = 0,
  lm_generated = 1,
  back_translated = 2,
  forward_translated = 3,
};

const char* tag_name(Tag t);
std::optional<Tag> tag_from_name(const std::string& name);

class TagSet {
 public:
  TagSet() = default;
  explicit TagSet(Tag t) { add(t); }
  void add(Tag t) { bits_ |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(t)); }
  bool contains(Tag t) const { return bits_ & (1u << static_cast<unsigned>(t)); }
  bool empty() const { return bits_ == 0; }
  std::vector<std::string> names() const;
  bool operator==(const TagSet&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

// One aligned sentence pair. Neither side may contain a newline; origin
// names the dataset the pair came from.
struct SegmentPair {
  std::string source;
  std::string target;
  std::string origin;
  TagSet tags;

  bool operator==(const SegmentPair&) const = default;
};

// Throws DataError if a side embeds a newline or origin is empty.
void validate(const SegmentPair& pair);

struct CorpusManifest {
  std::string name;
  std::uint64_t segment_count = 0;
  std::string source_lang;
  std::string target_lang;
  std::string checksum;    // digest over both files
  std::string created_by;  // operation name + parameters

  std::string to_json() const;
  static CorpusManifest from_json(const std::string& text);
};

// Writes `<name>.manifest.json` next to the corpus files.
void save_manifest(const CorpusManifest& m, const std::string& directory);

struct SplitConfig {
  std::uint64_t dev_size = 5000;
  std::uint64_t test_size = 5000;
  std::uint64_t seed = 0;
};

// Single-consumer stream of pairs. next() returns false at end of stream.
class PairSource {
 public:
  virtual ~PairSource() = default;
  virtual bool next(SegmentPair& out) = 0;
};

// Streams a two-file bitext (or a single `source TAB target` TSV) in
// constant memory. Lines must be valid UTF-8; the two files must have
// equal line counts.
class ParallelFileReader : public PairSource {
 public:
  ParallelFileReader(const std::string& source_path, const std::string& target_path,
                     std::string origin);
  // TSV mode: one file, source TAB target per line.
  ParallelFileReader(const std::string& tsv_path, std::string origin);

  bool next(SegmentPair& out) override;

 private:
  void check_utf8(const std::string& line, const std::string& path, std::uint64_t consumed_bytes);

  std::ifstream src_;
  std::ifstream tgt_;
  std::string src_path_;
  std::string tgt_path_;
  std::string origin_;
  bool tsv_ = false;
  std::uint64_t line_ = 0;
  std::uint64_t src_bytes_ = 0;
  std::uint64_t tgt_bytes_ = 0;
};

// Replays an in-memory vector.
class VectorSource : public PairSource {
 public:
  explicit VectorSource(std::vector<SegmentPair> pairs) : pairs_(std::move(pairs)) {}
  bool next(SegmentPair& out) override;

 private:
  std::vector<SegmentPair> pairs_;
  std::size_t idx_ = 0;
};

// Yields the given streams one after another, each in its own order.
class ConcatSource : public PairSource {
 public:
  explicit ConcatSource(std::vector<std::unique_ptr<PairSource>> inputs)
      : inputs_(std::move(inputs)) {}
  bool next(SegmentPair& out) override;

 private:
  std::vector<std::unique_ptr<PairSource>> inputs_;
  std::size_t idx_ = 0;
};

std::vector<SegmentPair> drain(PairSource& source);

struct WriteOptions {
  std::string name = "corpus";
  std::string source_lang;
  std::string target_lang;
  std::string created_by;
};

// Writes a line-aligned bitext and returns its manifest. Pairs are
// validated; an I/O failure reports how many pairs were written.
CorpusManifest write_parallel(PairSource& pairs, const std::string& source_path,
                              const std::string& target_path, const WriteOptions& opts = {});

// Random-access view over a bitext: one pass to index line offsets, then
// get(i) seeks. Memory is one offset per line.
class IndexedCorpus {
 public:
  IndexedCorpus(const std::string& source_path, const std::string& target_path,
                std::string origin);

  std::uint64_t size() const { return src_offsets_.size(); }
  SegmentPair get(std::uint64_t i) const;

 private:
  std::string src_path_;
  std::string tgt_path_;
  std::string origin_;
  std::vector<std::uint64_t> src_offsets_;
  std::vector<std::uint64_t> tgt_offsets_;
  mutable std::ifstream src_;
  mutable std::ifstream tgt_;
};

struct SplitResult {
  CorpusManifest train;
  CorpusManifest dev;
  CorpusManifest test;
};

// Draws seeded dev/test samples without replacement; everything else goes
// to train. Outputs are written as `<prefix>.{train,dev,test}.{src,tgt}`
// under out_dir. Dev and test keep corpus order internally.
SplitResult sample_split(const IndexedCorpus& corpus, const SplitConfig& cfg,
                         const std::string& out_dir, const std::string& prefix,
                         const std::string& source_lang = "", const std::string& target_lang = "");

// Index sets behind sample_split, exposed for direct testing.
struct SplitIndices {
  std::vector<std::uint64_t> dev;
  std::vector<std::uint64_t> test;
};
SplitIndices make_split_indices(std::uint64_t corpus_size, const SplitConfig& cfg);

// Reads a text file into lines (UTF-8 checked). Used for monolingual corpora.
std::vector<std::string> read_lines(const std::string& path);
void write_lines(const std::vector<std::string>& lines, const std::string& path);

}  // namespace domainsmith
