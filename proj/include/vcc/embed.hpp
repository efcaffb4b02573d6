#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

namespace vcc {

using Vec = Eigen::VectorXd;

struct EmbeddingVector {
  std::string source_id;
  Vec values;  // unit L2 norm once it leaves embed_batch
};

enum class EmbedKind { Remote, LocalDeterministic };

struct EmbedProviderConfig {
  EmbedKind kind = EmbedKind::LocalDeterministic;
  std::string endpoint_url;                 // REMOTE
  std::string model_name;                   // REMOTE
  std::string api_key_env = "EMBED_API_KEY";  // REMOTE
  int dimension = 512;                      // LOCAL
  int batch_size = 32;
  int max_inflight = 4;                     // cap on in-flight remote requests
};

// Fixed-order sequential accumulation; bit-stable across platforms, unlike
// vectorized reductions whose packet width varies by architecture.
double stable_dot(const Vec& u, const Vec& v);
double stable_norm(const Vec& v);

// v / ||v||. Throws on the zero vector.
Vec l2_normalize(const Vec& v);

// Dot product of unit vectors, clamped to [-1, 1].
double cosine(const Vec& u, const Vec& v);

// One unit vector per input text, same order.
// LOCAL_DETERMINISTIC: hashed character-trigram term frequencies over
// `dimension` buckets (FNV-1a 64 of each trigram modulo dimension), then
// L2-normalized; a pure function of (text, dimension).
// REMOTE: JSON-over-HTTP {model, inputs:[...]} -> {vectors:[[...]]}, with
// 3 attempts and exponential backoff on transport errors and HTTP 429/5xx.
std::vector<EmbeddingVector> embed_batch(const EmbedProviderConfig& config,
                                         const std::vector<std::string>& texts,
                                         const std::vector<std::string>& ids =
                                             {});

}  // namespace vcc
