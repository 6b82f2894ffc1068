#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "domainsmith/services.hpp"

namespace domainsmith {

// In-process deterministic stand-in for all three services, scripted from a
// JSON file so whole pipelines run offline and bit-reproducibly.
//
// Script shape (all sections optional):
//   {
//     "generate":  {"mode": "derived"|"scripted",
//                   "responses": {"<prompt>": ["seq", ...]},
//                   "default": ["seq", ...],
//                   "inject_noise": true,
//                   "fail_first": 0},
//     "translate": {"mode": "reverse"|"echo"|"prefix"|"scripted",
//                   "prefix": "tr| ",
//                   "responses": {"<text>": "<translation>"},
//                   "fail_first": 0},
//     "embed":     {"mode": "bow_hash"|"hash"|"scripted",
//                   "dim": 64,
//                   "responses": {"<text>": [floats]},
//                   "fail_first": 0}
//   }
//
// "derived" generation builds continuations from the prompt's own words
// (seeded by the request seed), so outputs stay in the prompt's language and
// are reproducible. With inject_noise it sprinkles dash-only lines, filename
// lines, and off-language lines for the cleanup stage to catch.
// "reverse" translation reverses the word order: output length matches,
// text differs from the input, and bag-of-words embeddings still match.
// "bow_hash" embeds the word multiset, so a sentence and its reversal get
// cosine 1; "hash" embeds the exact string.
class MockTransport final : public Transport {
 public:
  struct Call {
    std::string path;
    std::string body;
  };

  static std::shared_ptr<MockTransport> from_file(const std::string& path);
  static std::shared_ptr<MockTransport> from_json(const std::string& text);

  std::string post_json(const std::string& path, const std::string& body) override;

  std::vector<Call> calls() const;
  std::size_t call_count(const std::string& path) const;

  ~MockTransport() override;

 private:
  MockTransport();
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace domainsmith
