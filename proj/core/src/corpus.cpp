#include "domainsmith/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <nlohmann/json.hpp>

#include "domainsmith/digest.hpp"
#include "domainsmith/errors.hpp"
#include "domainsmith/unicode.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace domainsmith {

namespace {

// getline that treats a missing final newline as a full line.
bool read_line(std::ifstream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  return true;
}

std::uint64_t count_remaining_lines(std::ifstream& in) {
  std::string line;
  std::uint64_t n = 0;
  while (std::getline(in, line)) ++n;
  return n;
}

}  // namespace

const char* tag_name(Tag t) {
  switch (t) {
    case Tag::authentic: return "authentic";
    case Tag::lm_generated: return "lm-generated";
    case Tag::back_translated: return "back-translated";
    case Tag::forward_translated: return "forward-translated";
  }
  return "unknown";
}

std::optional<Tag> tag_from_name(const std::string& name) {
  for (Tag t : {Tag::authentic, Tag::lm_generated, Tag::back_translated, Tag::forward_translated}) {
    if (name == tag_name(t)) return t;
  }
  return std::nullopt;
}

std::vector<std::string> TagSet::names() const {
  std::vector<std::string> out;
  for (Tag t : {Tag::authentic, Tag::lm_generated, Tag::back_translated, Tag::forward_translated}) {
    if (contains(t)) out.emplace_back(tag_name(t));
  }
  return out;
}

void validate(const SegmentPair& pair) {
  if (pair.source.find('\n') != std::string::npos || pair.target.find('\n') != std::string::npos) {
    throw DataError("segment contains a newline (origin: " + pair.origin + ")");
  }
  if (pair.origin.empty()) throw DataError("segment has empty origin");
}

std::string CorpusManifest::to_json() const {
  json j{{"name", name},
         {"segment_count", segment_count},
         {"source_lang", source_lang},
         {"target_lang", target_lang},
         {"checksum", checksum},
         {"created_by", created_by}};
  return j.dump(2);
}

CorpusManifest CorpusManifest::from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed manifest JSON");
  CorpusManifest m;
  m.name = j.value("name", "");
  m.segment_count = j.value("segment_count", std::uint64_t{0});
  m.source_lang = j.value("source_lang", "");
  m.target_lang = j.value("target_lang", "");
  m.checksum = j.value("checksum", "");
  m.created_by = j.value("created_by", "");
  return m;
}

void save_manifest(const CorpusManifest& m, const std::string& directory) {
  fs::create_directories(directory);
  std::ofstream out(fs::path(directory) / (m.name + ".manifest.json"));
  out << m.to_json() << '\n';
}

ParallelFileReader::ParallelFileReader(const std::string& source_path,
                                       const std::string& target_path, std::string origin)
    : src_(source_path, std::ios::binary),
      tgt_(target_path, std::ios::binary),
      src_path_(source_path),
      tgt_path_(target_path),
      origin_(std::move(origin)) {
  if (!src_) throw DataError("cannot open source file: " + source_path);
  if (!tgt_) throw DataError("cannot open target file: " + target_path);
}

ParallelFileReader::ParallelFileReader(const std::string& tsv_path, std::string origin)
    : src_(tsv_path, std::ios::binary), src_path_(tsv_path), origin_(std::move(origin)), tsv_(true) {
  if (!src_) throw DataError("cannot open TSV file: " + tsv_path);
}

void ParallelFileReader::check_utf8(const std::string& line, const std::string& path,
                                    std::uint64_t consumed_bytes) {
  if (auto off = unicode::find_invalid_utf8(line)) {
    throw DecodeError("invalid UTF-8 in " + path + " at byte offset " +
                      std::to_string(consumed_bytes + *off) + " (line " + std::to_string(line_ + 1) +
                      ")");
  }
}

bool ParallelFileReader::next(SegmentPair& out) {
  std::string s;
  if (tsv_) {
    if (!read_line(src_, s)) return false;
    check_utf8(s, src_path_, src_bytes_);
    src_bytes_ += s.size() + 1;
    auto tab = s.find('\t');
    if (tab == std::string::npos) {
      throw ParseError("missing TAB in " + src_path_ + " line " + std::to_string(line_ + 1));
    }
    out.source = s.substr(0, tab);
    out.target = s.substr(tab + 1);
    out.origin = origin_;
    out.tags = TagSet(Tag::authentic);
    ++line_;
    return true;
  }
  std::string t;
  bool has_s = read_line(src_, s);
  bool has_t = read_line(tgt_, t);
  if (has_s != has_t) {
    std::uint64_t src_count = line_ + (has_s ? 1 + count_remaining_lines(src_) : 0);
    std::uint64_t tgt_count = line_ + (has_t ? 1 + count_remaining_lines(tgt_) : 0);
    throw AlignmentError("line count mismatch: " + src_path_ + " has " + std::to_string(src_count) +
                         " lines, " + tgt_path_ + " has " + std::to_string(tgt_count));
  }
  if (!has_s) return false;
  check_utf8(s, src_path_, src_bytes_);
  src_bytes_ += s.size() + 1;
  check_utf8(t, tgt_path_, tgt_bytes_);
  tgt_bytes_ += t.size() + 1;
  out.source = std::move(s);
  out.target = std::move(t);
  out.origin = origin_;
  out.tags = TagSet(Tag::authentic);
  ++line_;
  return true;
}

bool VectorSource::next(SegmentPair& out) {
  if (idx_ >= pairs_.size()) return false;
  out = pairs_[idx_++];
  return true;
}

bool ConcatSource::next(SegmentPair& out) {
  while (idx_ < inputs_.size()) {
    if (inputs_[idx_]->next(out)) return true;
    ++idx_;
  }
  return false;
}

std::vector<SegmentPair> drain(PairSource& source) {
  std::vector<SegmentPair> out;
  SegmentPair p;
  while (source.next(p)) out.push_back(p);
  return out;
}

CorpusManifest write_parallel(PairSource& pairs, const std::string& source_path,
                              const std::string& target_path, const WriteOptions& opts) {
  std::ofstream src(source_path, std::ios::binary);
  std::ofstream tgt(target_path, std::ios::binary);
  if (!src) throw DataError("cannot open for write: " + source_path);
  if (!tgt) throw DataError("cannot open for write: " + target_path);

  Fnv1a64 digest;
  std::uint64_t n = 0;
  SegmentPair p;
  while (pairs.next(p)) {
    validate(p);
    src << p.source << '\n';
    tgt << p.target << '\n';
    if (!src || !tgt) {
      throw DataError("write failure after " + std::to_string(n) + " pairs (" + source_path + ")");
    }
    digest.update(p.source).update_byte('\x01').update(p.target).update_byte('\n');
    ++n;
  }
  src.flush();
  tgt.flush();
  if (!src || !tgt) throw DataError("flush failure after " + std::to_string(n) + " pairs");

  CorpusManifest m;
  m.name = opts.name;
  m.segment_count = n;
  m.source_lang = opts.source_lang;
  m.target_lang = opts.target_lang;
  m.checksum = "fnv1a64:" + digest.hex();
  m.created_by = opts.created_by.empty() ? "write_parallel" : opts.created_by;
  return m;
}

IndexedCorpus::IndexedCorpus(const std::string& source_path, const std::string& target_path,
                             std::string origin)
    : src_path_(source_path), tgt_path_(target_path), origin_(std::move(origin)) {
  auto index_file = [](const std::string& path, std::vector<std::uint64_t>& offsets) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open: " + path);
    std::uint64_t pos = 0;
    std::string line;
    while (std::getline(in, line)) {
      offsets.push_back(pos);
      pos += line.size() + 1;
    }
  };
  index_file(src_path_, src_offsets_);
  index_file(tgt_path_, tgt_offsets_);
  if (src_offsets_.size() != tgt_offsets_.size()) {
    throw AlignmentError("line count mismatch: " + src_path_ + " has " +
                         std::to_string(src_offsets_.size()) + " lines, " + tgt_path_ + " has " +
                         std::to_string(tgt_offsets_.size()));
  }
  src_.open(src_path_, std::ios::binary);
  tgt_.open(tgt_path_, std::ios::binary);
}

SegmentPair IndexedCorpus::get(std::uint64_t i) const {
  if (i >= size()) throw DataError("corpus index out of range: " + std::to_string(i));
  SegmentPair p;
  src_.clear();
  src_.seekg(static_cast<std::streamoff>(src_offsets_[i]));
  std::getline(src_, p.source);
  tgt_.clear();
  tgt_.seekg(static_cast<std::streamoff>(tgt_offsets_[i]));
  std::getline(tgt_, p.target);
  p.origin = origin_;
  p.tags = TagSet(Tag::authentic);
  return p;
}

SplitIndices make_split_indices(std::uint64_t corpus_size, const SplitConfig& cfg) {
  if (cfg.dev_size + cfg.test_size > corpus_size) {
    throw SizeError("split needs " + std::to_string(cfg.dev_size + cfg.test_size) +
                    " segments, corpus has " + std::to_string(corpus_size));
  }
  Rng rng(cfg.seed);
  auto sampled = sample_indices(corpus_size, cfg.dev_size + cfg.test_size, rng);
  // Assign sampled indices to dev/test by a seeded shuffle of the pool.
  rng.shuffle(sampled);
  SplitIndices out;
  out.dev.assign(sampled.begin(), sampled.begin() + static_cast<std::ptrdiff_t>(cfg.dev_size));
  out.test.assign(sampled.begin() + static_cast<std::ptrdiff_t>(cfg.dev_size), sampled.end());
  std::sort(out.dev.begin(), out.dev.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

SplitResult sample_split(const IndexedCorpus& corpus, const SplitConfig& cfg,
                         const std::string& out_dir, const std::string& prefix,
                         const std::string& source_lang, const std::string& target_lang) {
  auto indices = make_split_indices(corpus.size(), cfg);
  fs::create_directories(out_dir);

  struct Part {
    const char* suffix;
    std::ofstream src, tgt;
    Fnv1a64 digest;
    std::uint64_t count = 0;
  };
  auto open_part = [&](const char* suffix) {
    Part p{suffix, {}, {}, {}, 0};
    p.src.open(fs::path(out_dir) / (prefix + "." + suffix + ".src"), std::ios::binary);
    p.tgt.open(fs::path(out_dir) / (prefix + "." + suffix + ".tgt"), std::ios::binary);
    if (!p.src || !p.tgt) throw DataError("cannot open split outputs under " + out_dir);
    return p;
  };
  Part train = open_part("train");
  Part dev = open_part("dev");
  Part test = open_part("test");

  std::size_t di = 0, ti = 0;
  for (std::uint64_t i = 0; i < corpus.size(); ++i) {
    Part* part = &train;
    if (di < indices.dev.size() && indices.dev[di] == i) {
      part = &dev;
      ++di;
    } else if (ti < indices.test.size() && indices.test[ti] == i) {
      part = &test;
      ++ti;
    }
    SegmentPair p = corpus.get(i);
    part->src << p.source << '\n';
    part->tgt << p.target << '\n';
    part->digest.update(p.source).update_byte('\x01').update(p.target).update_byte('\n');
    ++part->count;
  }

  auto manifest = [&](const Part& p) {
    CorpusManifest m;
    m.name = prefix + "." + p.suffix;
    m.segment_count = p.count;
    m.source_lang = source_lang;
    m.target_lang = target_lang;
    m.checksum = "fnv1a64:" + p.digest.hex();
    m.created_by = "sample_split(dev_size=" + std::to_string(cfg.dev_size) +
                   ",test_size=" + std::to_string(cfg.test_size) + ",seed=" + std::to_string(cfg.seed) +
                   ")";
    save_manifest(m, out_dir);
    return m;
  };
  return SplitResult{manifest(train), manifest(dev), manifest(test)};
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open: " + path);
  std::vector<std::string> lines;
  std::string line;
  std::uint64_t consumed = 0;
  while (std::getline(in, line)) {
    if (auto off = unicode::find_invalid_utf8(line)) {
      throw DecodeError("invalid UTF-8 in " + path + " at byte offset " +
                        std::to_string(consumed + *off));
    }
    consumed += line.size() + 1;
    lines.push_back(std::move(line));
  }
  return lines;
}

void write_lines(const std::vector<std::string>& lines, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for write: " + path);
  for (const auto& l : lines) out << l << '\n';
  if (!out) throw DataError("write failure: " + path);
}

}  // namespace domainsmith
