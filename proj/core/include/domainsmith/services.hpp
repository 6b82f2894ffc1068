#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "domainsmith/errors.hpp"

namespace domainsmith {

// Decoding configuration sent to the generation service. The defaults are
// the pipeline's standard configuration.
struct GenerationParams {
  int top_k = 50;
  double top_p = 0.95;
  int max_new_tokens = 300;
  int num_return_sequences = 5;
  std::uint64_t seed = 0;
};

struct TranslationParams {
  int beam_size = 5;
  int batch_size = 32;
};

struct LangPair {
  std::string source;
  std::string target;

  // Parses "xx-yy".
  static LangPair parse(const std::string& tag);
  std::string tag() const { return source + "-" + target; }
};

struct ServiceEndpoint {
  std::string base_url;
  std::chrono::milliseconds timeout{30000};
  int max_retries = 3;
  int max_in_flight = 4;
  std::chrono::milliseconds backoff{100};  // doubles per retry
};

// A single attempt failed at the transport level (connect/read). Retryable;
// after the retry budget it surfaces as ServiceError.
class TransportFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One JSON-over-HTTP POST. The seam between clients and the outside world;
// mocks implement this in process.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual std::string post_json(const std::string& path, const std::string& body) = 0;
};

std::shared_ptr<Transport> make_http_transport(const ServiceEndpoint& endpoint);

class GenerationClient {
 public:
  virtual ~GenerationClient() = default;
  // Returns exactly params.num_return_sequences continuations.
  virtual std::vector<std::string> generate(const std::string& prompt,
                                            const GenerationParams& params) = 0;
};

class TranslationClient {
 public:
  virtual ~TranslationClient() = default;
  // Output aligns index-for-index with texts; batching is internal.
  virtual std::vector<std::string> translate(const std::vector<std::string>& texts,
                                             const TranslationParams& params,
                                             const LangPair& direction) = 0;
};

class EmbeddingClient {
 public:
  virtual ~EmbeddingClient() = default;
  // One vector per text, all of the dimension reported by the service.
  virtual std::vector<std::vector<float>> embed(const std::vector<std::string>& texts) = 0;
};

// POST /v1/generate {"prompt","top_k","top_p","max_new_tokens",
// "num_return_sequences","seed"} -> {"sequences":[str]}.
std::unique_ptr<GenerationClient> make_generation_client(std::shared_ptr<Transport> transport,
                                                         ServiceEndpoint endpoint);

// POST /v1/translate {"texts","source_lang","target_lang","beam_size"}
// -> {"translations":[str]}. Batches of params.batch_size go out with up to
// endpoint.max_in_flight concurrent requests and are reassembled in order.
std::unique_ptr<TranslationClient> make_translation_client(std::shared_ptr<Transport> transport,
                                                           ServiceEndpoint endpoint);

// POST /v1/embed {"texts"} -> {"dim", "vectors":[[float]]}.
std::unique_ptr<EmbeddingClient> make_embedding_client(std::shared_ptr<Transport> transport,
                                                       ServiceEndpoint endpoint);

double cosine_similarity(const std::vector<float>& a, const std::vector<float>& b);

}  // namespace domainsmith
