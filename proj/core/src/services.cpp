#include "domainsmith/services.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <thread>

#include "domainsmith/parallel.hpp"

#define CPPHTTPLIB_NO_EXCEPTIONS
#include <httplib.h>

using json = nlohmann::json;

namespace domainsmith {

namespace {

// Runs fn with the endpoint's retry budget; transport failures back off
// exponentially, protocol errors do not retry.
template <typename Fn>
auto with_retries(const ServiceEndpoint& ep, Fn&& fn) {
  for (int attempt = 0;; ++attempt) {
    try {
      return fn();
    } catch (const TransportFailure& failure) {
      if (attempt >= ep.max_retries) {
        throw ServiceError("transport failure after " + std::to_string(ep.max_retries) +
                           " retries: " + failure.what());
      }
      auto delay = ep.backoff * (1LL << attempt);
      if (delay.count() > 0) std::this_thread::sleep_for(delay);
    }
  }
}

json parse_response(const std::string& body, const std::string& path) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded()) throw ProtocolError("malformed JSON from " + path);
  return j;
}

class HttpTransport final : public Transport {
 public:
  explicit HttpTransport(ServiceEndpoint ep) : ep_(std::move(ep)) {}

  std::string post_json(const std::string& path, const std::string& body) override {
    // A client per call keeps this safe under concurrent requests.
    httplib::Client cli(ep_.base_url);
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(ep_.timeout);
    cli.set_connection_timeout(secs.count() > 0 ? secs.count() : 1, 0);
    cli.set_read_timeout(secs.count() > 0 ? secs.count() : 1, 0);
    auto res = cli.Post(path, body, "application/json");
    if (!res) throw TransportFailure(httplib::to_string(res.error()) + " (" + ep_.base_url + path + ")");
    if (res->status / 100 != 2) {
      throw ProtocolError("HTTP " + std::to_string(res->status) + " from " + ep_.base_url + path);
    }
    return res->body;
  }

 private:
  ServiceEndpoint ep_;
};

class WireGenerationClient final : public GenerationClient {
 public:
  WireGenerationClient(std::shared_ptr<Transport> transport, ServiceEndpoint ep)
      : transport_(std::move(transport)), ep_(std::move(ep)) {}

  std::vector<std::string> generate(const std::string& prompt,
                                    const GenerationParams& params) override {
    json body{{"prompt", prompt},
              {"top_k", params.top_k},
              {"top_p", params.top_p},
              {"max_new_tokens", params.max_new_tokens},
              {"num_return_sequences", params.num_return_sequences},
              {"seed", params.seed}};
    std::string raw = with_retries(ep_, [&] { return transport_->post_json("/v1/generate", body.dump()); });
    json j = parse_response(raw, "/v1/generate");
    if (!j.contains("sequences") || !j["sequences"].is_array()) {
      throw ProtocolError("/v1/generate response lacks a sequences array");
    }
    std::vector<std::string> out;
    for (const auto& s : j["sequences"]) {
      if (!s.is_string()) throw ProtocolError("/v1/generate sequence is not a string");
      out.push_back(s.get<std::string>());
    }
    if (out.size() != static_cast<std::size_t>(params.num_return_sequences)) {
      throw ProtocolError("/v1/generate returned " + std::to_string(out.size()) + " of " +
                          std::to_string(params.num_return_sequences) + " requested sequences");
    }
    return out;
  }

 private:
  std::shared_ptr<Transport> transport_;
  ServiceEndpoint ep_;
};

class WireTranslationClient final : public TranslationClient {
 public:
  WireTranslationClient(std::shared_ptr<Transport> transport, ServiceEndpoint ep)
      : transport_(std::move(transport)), ep_(std::move(ep)) {}

  std::vector<std::string> translate(const std::vector<std::string>& texts,
                                     const TranslationParams& params,
                                     const LangPair& direction) override {
    if (texts.empty()) return {};
    int batch_size = params.batch_size < 1 ? 1 : params.batch_size;

    std::vector<std::pair<std::size_t, std::size_t>> batches;
    for (std::size_t begin = 0; begin < texts.size(); begin += static_cast<std::size_t>(batch_size)) {
      batches.emplace_back(begin, std::min(texts.size(), begin + static_cast<std::size_t>(batch_size)));
    }

    auto one_batch = [&](const std::pair<std::size_t, std::size_t>& span, std::size_t) {
      json body{{"texts", json::array()},
                {"source_lang", direction.source},
                {"target_lang", direction.target},
                {"beam_size", params.beam_size}};
      for (std::size_t i = span.first; i < span.second; ++i) body["texts"].push_back(texts[i]);
      std::string raw =
          with_retries(ep_, [&] { return transport_->post_json("/v1/translate", body.dump()); });
      json j = parse_response(raw, "/v1/translate");
      if (!j.contains("translations") || !j["translations"].is_array()) {
        throw ProtocolError("/v1/translate response lacks a translations array");
      }
      std::vector<std::string> out;
      for (const auto& t : j["translations"]) {
        if (!t.is_string()) throw ProtocolError("/v1/translate translation is not a string");
        out.push_back(t.get<std::string>());
      }
      if (out.size() != span.second - span.first) {
        throw ProtocolError("/v1/translate returned " + std::to_string(out.size()) + " of " +
                            std::to_string(span.second - span.first) + " texts");
      }
      return out;
    };

    auto results = parallel_ordered_map(batches, static_cast<unsigned>(ep_.max_in_flight), one_batch);
    std::vector<std::string> out;
    out.reserve(texts.size());
    for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
    return out;
  }

 private:
  std::shared_ptr<Transport> transport_;
  ServiceEndpoint ep_;
};

class WireEmbeddingClient final : public EmbeddingClient {
 public:
  WireEmbeddingClient(std::shared_ptr<Transport> transport, ServiceEndpoint ep)
      : transport_(std::move(transport)), ep_(std::move(ep)) {}

  std::vector<std::vector<float>> embed(const std::vector<std::string>& texts) override {
    if (texts.empty()) return {};
    json body{{"texts", texts}};
    std::string raw = with_retries(ep_, [&] { return transport_->post_json("/v1/embed", body.dump()); });
    json j = parse_response(raw, "/v1/embed");
    if (!j.contains("dim") || !j["dim"].is_number_integer() || !j.contains("vectors") ||
        !j["vectors"].is_array()) {
      throw ProtocolError("/v1/embed response lacks dim/vectors");
    }
    std::size_t dim = j["dim"].get<std::size_t>();
    std::vector<std::vector<float>> out;
    for (const auto& v : j["vectors"]) {
      if (!v.is_array()) throw ProtocolError("/v1/embed vector is not an array");
      std::vector<float> vec;
      vec.reserve(v.size());
      for (const auto& x : v) vec.push_back(x.get<float>());
      if (vec.size() != dim) {
        throw ProtocolError("/v1/embed vector of dimension " + std::to_string(vec.size()) +
                            ", expected " + std::to_string(dim));
      }
      out.push_back(std::move(vec));
    }
    if (out.size() != texts.size()) {
      throw ProtocolError("/v1/embed returned " + std::to_string(out.size()) + " vectors for " +
                          std::to_string(texts.size()) + " texts");
    }
    return out;
  }

 private:
  std::shared_ptr<Transport> transport_;
  ServiceEndpoint ep_;
};

}  // namespace

LangPair LangPair::parse(const std::string& tag) {
  auto dash = tag.find('-');
  if (dash == std::string::npos || dash == 0 || dash + 1 == tag.size()) {
    throw UsageError("language pair must look like 'ar-en', got '" + tag + "'");
  }
  return LangPair{tag.substr(0, dash), tag.substr(dash + 1)};
}

std::shared_ptr<Transport> make_http_transport(const ServiceEndpoint& endpoint) {
  return std::make_shared<HttpTransport>(endpoint);
}

std::unique_ptr<GenerationClient> make_generation_client(std::shared_ptr<Transport> transport,
                                                         ServiceEndpoint endpoint) {
  return std::make_unique<WireGenerationClient>(std::move(transport), std::move(endpoint));
}

std::unique_ptr<TranslationClient> make_translation_client(std::shared_ptr<Transport> transport,
                                                           ServiceEndpoint endpoint) {
  return std::make_unique<WireTranslationClient>(std::move(transport), std::move(endpoint));
}

std::unique_ptr<EmbeddingClient> make_embedding_client(std::shared_ptr<Transport> transport,
                                                       ServiceEndpoint endpoint) {
  return std::make_unique<WireEmbeddingClient>(std::move(transport), std::move(endpoint));
}

double cosine_similarity(const std::vector<float>& a, const std::vector<float>& b) {
  if (a.size() != b.size()) {
    throw ProtocolError("embedding dimension mismatch: " + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()));
  }
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace domainsmith
