#include "vcc/embed.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <nlohmann/json.hpp>

#include "vcc/digest.hpp"
#include "vcc/error.hpp"

// keep the heavy header out of embed.hpp
#ifdef VCC_NO_HTTPLIB
#else
#include <httplib.h>
#endif

namespace vcc {

double stable_dot(const Vec& u, const Vec& v) {
  double acc = 0.0;
  Eigen::Index n = std::min(u.size(), v.size());
  for (Eigen::Index i = 0; i < n; ++i) acc += u[i] * v[i];
  return acc;
}

double stable_norm(const Vec& v) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += v[i] * v[i];
  return std::sqrt(acc);
}

Vec l2_normalize(const Vec& v) {
  double norm = stable_norm(v);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw_contract("l2_normalize: zero or non-finite vector");
  }
  return v / norm;
}

double cosine(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw_contract("cosine: dimension mismatch");
  return std::clamp(stable_dot(u, v), -1.0, 1.0);
}

namespace {

bool all_whitespace(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

Vec local_trigram_vector(const std::string& text, int dimension) {
  if (text.empty() || all_whitespace(text)) {
    throw_input("embed_batch: empty text");
  }
  Vec counts = Vec::Zero(dimension);
  auto bucket = [&](std::string_view gram) {
    return static_cast<Eigen::Index>(fnv1a64(gram) %
                                     static_cast<std::uint64_t>(dimension));
  };
  if (text.size() < 3) {
    counts[bucket(text)] += 1.0;
  } else {
    for (std::size_t i = 0; i + 3 <= text.size(); ++i) {
      counts[bucket(std::string_view(text).substr(i, 3))] += 1.0;
    }
  }
  return l2_normalize(counts);
}

#ifndef VCC_NO_HTTPLIB
std::vector<Vec> remote_embed(const EmbedProviderConfig& config,
                              const std::vector<std::string>& texts) {
  const char* key = nullptr;
  if (!config.api_key_env.empty()) {
    key = std::getenv(config.api_key_env.c_str());
  }
  if (!key || !*key) {
    throw_provider("embed provider: env var " + config.api_key_env +
                   " is not set");
  }
  if (config.endpoint_url.empty()) {
    throw_provider("embed provider: endpoint_url missing");
  }

  // split endpoint into host part and path
  std::string url = config.endpoint_url;
  std::string path = "/";
  std::size_t scheme = url.find("://");
  std::size_t slash = url.find('/', scheme == std::string::npos
                                        ? 0
                                        : scheme + 3);
  if (slash != std::string::npos) {
    path = url.substr(slash);
    url = url.substr(0, slash);
  }

  std::vector<Vec> out;
  out.reserve(texts.size());
  std::size_t batch = std::max(1, config.batch_size);
  for (std::size_t base = 0; base < texts.size(); base += batch) {
    std::size_t n = std::min(batch, texts.size() - base);
    nlohmann::json req;
    req["model"] = config.model_name;
    req["inputs"] = nlohmann::json::array();
    for (std::size_t i = 0; i < n; ++i) req["inputs"].push_back(texts[base + i]);

    std::string body;
    int status = 0;
    std::string error;
    for (int attempt = 0; attempt < 3; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(std::chrono::seconds(1 << (attempt - 1)));
      }
      httplib::Client client(url);
      client.set_read_timeout(60, 0);
      httplib::Headers headers = {
          {"Authorization", std::string("Bearer ") + key}};
      auto res = client.Post(path, headers, req.dump(), "application/json");
      if (!res) {
        error = "transport error";
        continue;
      }
      status = res->status;
      if (status == 429 || status >= 500) {
        error = "HTTP " + std::to_string(status);
        continue;
      }
      if (status >= 400) {
        throw_provider("embed provider: HTTP " + std::to_string(status));
      }
      body = res->body;
      error.clear();
      break;
    }
    if (!error.empty()) {
      throw_provider("embed provider unavailable after retries: " + error);
    }

    auto parsed = nlohmann::json::parse(body, nullptr, false);
    if (parsed.is_discarded() || !parsed.contains("vectors")) {
      throw_provider("embed provider: malformed response body");
    }
    for (const auto& row : parsed["vectors"]) {
      Vec v(row.size());
      Eigen::Index k = 0;
      for (const auto& x : row) v[k++] = x.get<double>();
      out.push_back(l2_normalize(v));
    }
  }
  if (out.size() != texts.size()) {
    throw_provider("embed provider: response count mismatch");
  }
  return out;
}
#endif

}  // namespace

std::vector<EmbeddingVector> embed_batch(const EmbedProviderConfig& config,
                                         const std::vector<std::string>& texts,
                                         const std::vector<std::string>& ids) {
  if (texts.empty()) throw_input("embed_batch: no texts");
  if (!ids.empty() && ids.size() != texts.size()) {
    throw_contract("embed_batch: ids/texts length mismatch");
  }

  std::vector<Vec> raw;
  if (config.kind == EmbedKind::LocalDeterministic) {
    if (config.dimension < 8) {
      throw_contract("embed_batch: dimension must be >= 8");
    }
    raw.reserve(texts.size());
    for (const auto& t : texts) {
      raw.push_back(local_trigram_vector(t, config.dimension));
    }
  } else {
#ifdef VCC_NO_HTTPLIB
    throw_provider("remote embedding disabled in this build");
#else
    raw = remote_embed(config, texts);
#endif
  }

  std::vector<EmbeddingVector> out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    EmbeddingVector ev;
    ev.source_id = ids.empty() ? std::string{} : ids[i];
    ev.values = std::move(raw[i]);
    out.push_back(std::move(ev));
  }
  return out;
}

}  // namespace vcc
