#include "domainsmith/subword.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "domainsmith/digest.hpp"
#include "domainsmith/errors.hpp"
#include "domainsmith/unicode.hpp"

namespace domainsmith {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool is_digit_cp(char32_t cp) {
  // ASCII plus the two Arabic digit blocks.
  return (cp >= U'0' && cp <= U'9') || (cp >= 0x0660 && cp <= 0x0669) ||
         (cp >= 0x06F0 && cp <= 0x06F9);
}

std::optional<unsigned> parse_byte_piece(std::string_view piece) {
  // "<0xNN>" with two uppercase hex digits.
  if (piece.size() != 6 || piece[0] != '<' || piece[1] != '0' || piece[2] != 'x' || piece[5] != '>')
    return std::nullopt;
  auto hex = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  int hi = hex(piece[3]), lo = hex(piece[4]);
  if (hi < 0 || lo < 0) return std::nullopt;
  return static_cast<unsigned>(hi * 16 + lo);
}

std::string byte_piece_name(unsigned char b) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "<0x%02X>", b);
  return buf;
}

}  // namespace

// Byte trie over piece strings for prefix matching at a position.
struct SubwordModel::Trie {
  struct Node {
    // sorted (byte, child) pairs
    std::vector<std::pair<unsigned char, std::uint32_t>> children;
    double logp = kNegInf;
    bool terminal = false;
  };
  std::vector<Node> nodes{Node{}};

  void insert(std::string_view piece, double logp) {
    std::uint32_t cur = 0;
    for (unsigned char b : piece) {
      auto& ch = nodes[cur].children;
      auto it = std::lower_bound(ch.begin(), ch.end(), b,
                                 [](const auto& p, unsigned char v) { return p.first < v; });
      if (it == ch.end() || it->first != b) {
        std::uint32_t next = static_cast<std::uint32_t>(nodes.size());
        it = nodes[cur].children.insert(it, {b, next});
        nodes.emplace_back();
      }
      cur = it->second;
    }
    nodes[cur].terminal = true;
    nodes[cur].logp = logp;
  }

  // Calls fn(end_offset, logp) for every piece that is a prefix of text.
  template <typename Fn>
  void match(std::string_view text, Fn&& fn) const {
    std::uint32_t cur = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      const auto& ch = nodes[cur].children;
      unsigned char b = static_cast<unsigned char>(text[i]);
      auto it = std::lower_bound(ch.begin(), ch.end(), b,
                                 [](const auto& p, unsigned char v) { return p.first < v; });
      if (it == ch.end() || it->first != b) return;
      cur = it->second;
      if (nodes[cur].terminal) fn(i + 1, nodes[cur].logp);
    }
  }
};

void SubwordModel::finish() {
  meta_.vocab_size = pieces_.size();
  std::fill(std::begin(byte_logp_), std::end(byte_logp_), kNegInf);
  unsigned byte_pieces = 0;
  auto trie = std::make_shared<Trie>();
  for (const auto& [piece, logp] : pieces_) {
    if (!std::isfinite(logp) || logp > 0.0) {
      throw ParseError("piece log-probability must be finite and <= 0: " + piece);
    }
    if (auto b = parse_byte_piece(piece)) {
      byte_logp_[*b] = logp;
      ++byte_pieces;
      continue;  // byte pieces are produced by fallback, not lattice matches
    }
    if (!piece.empty()) trie->insert(piece, logp);
  }
  meta_.has_byte_fallback = (byte_pieces == 256);
  trie_ = std::move(trie);
}

SubwordModel SubwordModel::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open subword model: " + path);
  SubwordModel m;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected piece TAB score");
    }
    std::string piece = line.substr(0, tab);
    std::string score_str = line.substr(tab + 1);
    double score = 0;
    std::size_t used = 0;
    try {
      score = std::stod(score_str, &used);
    } catch (const std::exception&) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": non-numeric score '" + score_str +
                       "'");
    }
    if (used != score_str.size()) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": non-numeric score '" + score_str +
                       "'");
    }
    if (!m.pieces_.emplace(piece, score).second) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": duplicate piece '" + piece + "'");
    }
  }
  m.finish();
  return m;
}

SubwordModel SubwordModel::from_pieces(const std::vector<std::pair<std::string, double>>& pieces,
                                       SubwordMeta meta) {
  SubwordModel m;
  m.meta_ = std::move(meta);
  for (const auto& [piece, logp] : pieces) {
    if (!m.pieces_.emplace(piece, logp).second) throw ParseError("duplicate piece '" + piece + "'");
  }
  bool split_digits = m.meta_.split_digits;
  std::string prefix = m.meta_.piece_prefix;
  m.finish();
  m.meta_.split_digits = split_digits;
  m.meta_.piece_prefix = prefix;
  return m;
}

std::optional<double> SubwordModel::log_prob(std::string_view piece) const {
  auto it = pieces_.find(std::string(piece));
  if (it == pieces_.end()) return std::nullopt;
  return it->second;
}

std::string SubwordModel::checksum() const {
  Fnv1a64 h;
  for (const auto& [piece, logp] : pieces_) {
    h.update(piece).update_byte('\t');
    h.update(std::to_string(logp)).update_byte('\n');
  }
  return "fnv1a64:" + h.hex();
}

std::vector<std::string> segment(std::string_view text, const SubwordModel& model) {
  const auto& meta = model.meta();

  // Marker substitution, then fragment boundaries around digits.
  std::string pre;
  pre.reserve(text.size());
  for (char c : text) {
    if (c == ' ')
      pre += meta.piece_prefix;
    else
      pre.push_back(c);
  }

  struct Fragment {
    std::size_t begin, end;
  };
  std::vector<Fragment> fragments;
  {
    std::size_t pos = 0, frag_start = 0;
    while (pos < pre.size()) {
      std::size_t start = pos;
      auto cp = unicode::decode_utf8(pre, pos);
      if (!cp) throw DecodeError("invalid UTF-8 at byte offset " + std::to_string(start));
      if (meta.split_digits && is_digit_cp(*cp)) {
        // each digit is a fragment of its own
        if (start != frag_start) fragments.push_back({frag_start, start});
        fragments.push_back({start, pos});
        frag_start = pos;
      }
    }
    if (frag_start < pre.size()) fragments.push_back({frag_start, pre.size()});
  }

  std::vector<std::string> out;
  for (const auto& frag : fragments) {
    std::string_view s(pre.data() + frag.begin, frag.end - frag.begin);
    std::size_t n = s.size();

    // Codepoint starts and the width of each character.
    std::vector<std::size_t> next_cp(n + 1, 0);
    std::vector<bool> is_cp_start(n + 1, false);
    is_cp_start[n] = true;
    {
      std::size_t pos = 0;
      while (pos < n) {
        is_cp_start[pos] = true;
        std::size_t p = pos;
        auto cp = unicode::decode_utf8(s, p);
        if (!cp) throw DecodeError("invalid UTF-8 inside fragment");
        next_cp[pos] = p;
        pos = p;
      }
    }

    struct Cell {
      double score = kNegInf;
      std::uint32_t count = 0;
      std::uint32_t jump = 0;      // byte length consumed by the chosen edge
      bool fallback = false;
      bool alive = false;
    };
    std::vector<Cell> dp(n + 1);
    dp[n] = {0.0, 0, 0, false, true};

    // Backward Viterbi. Edge preference on ties: higher score, then fewer
    // pieces, then the longest first piece (leftmost-longest).
    for (std::size_t i = n; i-- > 0;) {
      if (!is_cp_start[i]) continue;
      Cell best;
      auto consider = [&](std::size_t j, double w, std::uint32_t pieces_added, bool fb) {
        if (!dp[j].alive) return;
        double score = w + dp[j].score;
        std::uint32_t count = pieces_added + dp[j].count;
        std::uint32_t jump = static_cast<std::uint32_t>(j - i);
        if (!best.alive || score > best.score ||
            (score == best.score &&
             (count < best.count || (count == best.count && jump > best.jump)))) {
          best = {score, count, jump, fb, true};
        }
      };
      model.trie_->match(s.substr(i),
                         [&](std::size_t len, double logp) { consider(i + len, logp, 1, false); });
      if (meta.has_byte_fallback) {
        std::size_t j = next_cp[i];
        double w = 0;
        for (std::size_t k = i; k < j; ++k) w += model.byte_log_prob(static_cast<unsigned char>(s[k]));
        consider(j, w, static_cast<std::uint32_t>(j - i), true);
      }
      dp[i] = best;
    }

    if (!dp[0].alive) {
      // Name the first character the lattice cannot get past.
      std::size_t pos = 0;
      while (pos < n && dp[pos].alive) pos = next_cp[pos];
      std::size_t p = pos;
      auto cp = unicode::decode_utf8(s, p);
      char buf[16];
      std::snprintf(buf, sizeof buf, "U+%04X", cp ? static_cast<unsigned>(*cp) : 0u);
      throw CoverageError(std::string("character ") + buf +
                          " is not coverable and the model has no byte fallback");
    }

    for (std::size_t i = 0; i < n;) {
      const Cell& c = dp[i];
      if (c.fallback) {
        for (std::size_t k = i; k < i + c.jump; ++k)
          out.push_back(byte_piece_name(static_cast<unsigned char>(s[k])));
      } else {
        out.emplace_back(s.substr(i, c.jump));
      }
      i += c.jump;
    }
  }
  return out;
}

std::string desegment(const std::vector<std::string>& pieces, const SubwordModel& model) {
  return desegment(pieces, model.meta().piece_prefix);
}

std::string desegment(const std::vector<std::string>& pieces, const std::string& piece_prefix) {
  std::string joined;
  std::string run;  // pending byte-fallback bytes
  auto flush_run = [&]() {
    if (run.empty()) return;
    if (auto off = unicode::find_invalid_utf8(run)) {
      throw DecodeError("byte-fallback run is not valid UTF-8 (offset " + std::to_string(*off) +
                        " in run)");
    }
    joined += run;
    run.clear();
  };
  for (const auto& piece : pieces) {
    if (auto b = parse_byte_piece(piece)) {
      run.push_back(static_cast<char>(*b));
      continue;
    }
    flush_run();
    joined += piece;
  }
  flush_run();

  if (piece_prefix.empty()) return joined;
  std::string out;
  out.reserve(joined.size());
  std::size_t pos = 0;
  while (pos < joined.size()) {
    if (joined.compare(pos, piece_prefix.size(), piece_prefix) == 0) {
      out.push_back(' ');
      pos += piece_prefix.size();
    } else {
      out.push_back(joined[pos]);
      ++pos;
    }
  }
  return out;
}

const std::vector<std::string> kDefaultReservedTokens = {"<blank>", "<unk>", "<s>", "</s>"};

void export_vocab(const SubwordModel& model, const std::vector<std::string>& reserved,
                  const std::string& path, bool force_dedup) {
  for (std::size_t i = 0; i < reserved.size(); ++i) {
    for (std::size_t j = i + 1; j < reserved.size(); ++j) {
      if (reserved[i] == reserved[j]) throw DataError("duplicate reserved token: " + reserved[i]);
    }
  }
  std::vector<std::pair<std::string, double>> rows(model.pieces().begin(), model.pieces().end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for write: " + path);
  for (const auto& r : reserved) out << r << '\n';
  for (const auto& [piece, logp] : rows) {
    if (std::find(reserved.begin(), reserved.end(), piece) != reserved.end()) {
      if (!force_dedup) throw DataError("reserved token collides with piece: " + piece);
      continue;
    }
    out << piece << '\n';
  }
  if (!out) throw DataError("write failure: " + path);
}

}  // namespace domainsmith
