#include "vcc/validate.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <regex>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "vcc/digest.hpp"
#include "vcc/error.hpp"
#include "vcc/jsonl.hpp"

#ifndef VCC_NO_HTTPLIB
#include <httplib.h>
#endif

namespace vcc {

const char* parse_status_name(ParseStatus s) {
  switch (s) {
    case ParseStatus::Clean: return "CLEAN";
    case ParseStatus::Repaired: return "REPAIRED";
    case ParseStatus::Fallback: return "FALLBACK";
    case ParseStatus::Failed: return "FAILED";
  }
  return "?";
}

bool parse_status_from_name(std::string_view name, ParseStatus& out) {
  if (name == "CLEAN") out = ParseStatus::Clean;
  else if (name == "REPAIRED") out = ParseStatus::Repaired;
  else if (name == "FALLBACK") out = ParseStatus::Fallback;
  else if (name == "FAILED") out = ParseStatus::Failed;
  else return false;
  return true;
}

namespace {

constexpr const char* kPromptHead =
    "\n"
    "Analyze the following code functions to determine if the cloned "
    "function contains the same vulnerability as the original function:\n"
    "\n"
    "ORIGINAL FUNCTION (Known vulnerable):\n";
constexpr const char* kPromptFixed =
    "\n"
    "\n"
    "FIXED FUNCTION (Patched version):\n";
constexpr const char* kPromptCloned =
    "\n"
    "\n"
    "CLONED FUNCTION (To be assessed):\n";
constexpr const char* kPromptTail =
    "\n"
    "\n"
    "Please assess whether the cloned function is vulnerable to the same "
    "issue that was fixed in the original function.\n"
    "NOTE: A function that merely CALLS the original vulnerable function "
    "should NOT be considered a vulnerable clone unless it also IMPLEMENTS "
    "similar vulnerable logic itself. Focus on whether the cloned function "
    "contains similar vulnerable code patterns, not just whether it uses "
    "the vulnerable function.\n"
    "IMPORTANT: Respond ONLY with valid JSON in the exact format below. Do "
    "not include any explanatory text before or after the JSON.\n"
    "\n"
    "=== JSON RESPONSE ===\n"
    "{\n"
    "  \"is_vulnerable\": true/false,\n"
    "  \"confidence_level\": 1-5,\n"
    "  \"justification\": \"Detailed explanation of why the clone is or is "
    "not vulnerable. For vulnerable cases, explain what specific "
    "vulnerability pattern is present. For non-vulnerable cases, explain "
    "what protections/fixes are already in place that prevent the "
    "vulnerability.\"\n"
    "}\n"
    "=== END JSON ===\n";

constexpr const char* kMarkerBegin = "=== JSON RESPONSE ===";
constexpr const char* kMarkerEnd = "=== END JSON ===";

}  // namespace

std::string render_prompt(const ValidationRequest& req) {
  if (req.original_function.empty() || req.fixed_function.empty() ||
      req.cloned_function.empty()) {
    throw_contract("render_prompt: all three function texts must be non-empty");
  }
  std::string out;
  out.reserve(512 + req.original_function.size() + req.fixed_function.size() +
              req.cloned_function.size());
  out += kPromptHead;
  out += req.original_function;
  out += kPromptFixed;
  out += req.fixed_function;
  out += kPromptCloned;
  out += req.cloned_function;
  out += kPromptTail;
  return out;
}

std::string prompt_digest(const std::string& prompt) {
  return md5_hex(prompt);
}

std::string repair_invalid_escapes(const std::string& s) {
  static const std::string valid = "\"\\/bfnrtu";
  std::string out;
  out.reserve(s.size() + 8);
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c != '\\') {
      out.push_back(c);
      ++i;
      continue;
    }
    if (i + 1 >= s.size()) {  // trailing lone backslash
      out += "\\\\";
      ++i;
      continue;
    }
    char next = s[i + 1];
    if (valid.find(next) != std::string::npos) {
      out.push_back('\\');
      out.push_back(next);
    } else {
      out.push_back('\\');
      out.push_back('\\');
      out.push_back(next);
    }
    i += 2;
  }
  return out;
}

namespace {

// Candidate JSON substring: between the response markers when both are
// present, else the first balanced top-level {...} block (brace counting
// that ignores braces inside string literals).
std::string json_candidate(const std::string& text) {
  std::size_t b = text.find(kMarkerBegin);
  std::size_t e = text.find(kMarkerEnd);
  std::string region;
  if (b != std::string::npos && e != std::string::npos &&
      e > b + std::strlen(kMarkerBegin)) {
    b += std::strlen(kMarkerBegin);
    region = text.substr(b, e - b);
  } else {
    region = text;
  }
  std::size_t start = region.find('{');
  if (start == std::string::npos) return {};
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = start; i < region.size(); ++i) {
    char c = region[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return region.substr(start, i - start + 1);
    }
  }
  return region.substr(start);  // unbalanced; let the parser reject it
}

bool fields_from_json(const nlohmann::json& j, ValidationVerdict& v) {
  if (!j.is_object()) return false;
  auto iv = j.find("is_vulnerable");
  if (iv == j.end() || !iv->is_boolean()) return false;
  auto cl = j.find("confidence_level");
  if (cl == j.end() || !cl->is_number()) return false;
  v.is_vulnerable = iv->get<bool>();
  v.confidence_level =
      std::clamp(static_cast<int>(cl->get<double>()), 1, 5);
  auto ju = j.find("justification");
  if (ju != j.end() && ju->is_string()) {
    v.justification = ju->get<std::string>();
  }
  return true;
}

}  // namespace

ValidationVerdict extract_verdict(const std::string& response_text) {
  ValidationVerdict v;
  v.raw_response = response_text;
  v.parse_status = ParseStatus::Failed;

  std::string candidate = json_candidate(response_text);
  if (!candidate.empty()) {
    auto strict = nlohmann::json::parse(candidate, nullptr, false);
    if (!strict.is_discarded() && fields_from_json(strict, v)) {
      v.parse_status = ParseStatus::Clean;
      return v;
    }
    std::string repaired = repair_invalid_escapes(candidate);
    auto reparsed = nlohmann::json::parse(repaired, nullptr, false);
    if (!reparsed.is_discarded() && fields_from_json(reparsed, v)) {
      v.parse_status = ParseStatus::Repaired;
      return v;
    }
  }

  // field-level extraction
  static const std::regex is_vuln_re(
      "\"is_vulnerable\"\\s*:\\s*(true|false)");
  static const std::regex conf_re("\"confidence_level\"\\s*:\\s*([0-9]+)");
  static const std::regex just_re("\"justification\"\\s*:\\s*\"([^\"]*)");
  std::smatch m;
  if (std::regex_search(response_text, m, is_vuln_re)) {
    v.is_vulnerable = m[1] == "true";
    v.confidence_level = 1;
    if (std::regex_search(response_text, m, conf_re)) {
      v.confidence_level = std::clamp(std::atoi(m[1].str().c_str()), 1, 5);
    }
    if (std::regex_search(response_text, m, just_re)) {
      v.justification = m[1];
    }
    v.parse_status = ParseStatus::Fallback;
    return v;
  }

  v.is_vulnerable = false;
  v.confidence_level = 0;
  return v;
}

namespace {

class ReplayProvider : public LlmProvider {
 public:
  explicit ReplayProvider(const std::string& fixture_path) {
    for (const Json& j : read_jsonl(fixture_path)) {
      responses_[j.at("prompt_digest").get<std::string>()] =
          j.at("response_text").get<std::string>();
    }
  }

  std::string complete(const std::string& prompt) const override {
    std::string digest = prompt_digest(prompt);
    auto it = responses_.find(digest);
    if (it == responses_.end()) {
      throw_fixture_miss("replay fixture missing digest " + digest);
    }
    return it->second;
  }

 private:
  std::unordered_map<std::string, std::string> responses_;
};

#ifndef VCC_NO_HTTPLIB
class RemoteLlmProvider : public LlmProvider {
 public:
  explicit RemoteLlmProvider(LlmProviderConfig cfg) : cfg_(std::move(cfg)) {
    const char* key = nullptr;
    if (!cfg_.api_key_env.empty()) key = std::getenv(cfg_.api_key_env.c_str());
    if (!key || !*key) {
      throw_provider("llm provider: env var " + cfg_.api_key_env +
                     " is not set");
    }
    key_ = key;
    if (cfg_.endpoint_url.empty()) {
      throw_provider("llm provider: endpoint_url missing");
    }
  }

  std::string complete(const std::string& prompt) const override {
    nlohmann::json req;
    req["model"] = cfg_.model_name;
    req["temperature"] = cfg_.temperature;
    req["messages"] = nlohmann::json::array(
        {{{"role", "user"}, {"content", prompt}}});

    std::string url = cfg_.endpoint_url;
    std::string path = "/";
    std::size_t scheme = url.find("://");
    std::size_t slash =
        url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    if (slash != std::string::npos) {
      path = url.substr(slash);
      url = url.substr(0, slash);
    }

    std::string error;
    for (int attempt = 0; attempt < 3; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(std::chrono::seconds(1 << (attempt - 1)));
      }
      httplib::Client client(url);
      client.set_read_timeout(120, 0);
      httplib::Headers headers = {{"Authorization", "Bearer " + key_}};
      auto res = client.Post(path, headers, req.dump(), "application/json");
      if (!res) {
        error = "transport error";
        continue;
      }
      if (res->status == 429 || res->status >= 500) {
        error = "HTTP " + std::to_string(res->status);
        continue;
      }
      if (res->status >= 400) {
        throw_provider("llm provider: HTTP " + std::to_string(res->status));
      }
      return first_text_part(res->body);
    }
    throw_provider("llm provider unavailable after retries: " + error);
  }

 private:
  // the first text part of a chat-style response, tolerant of the common
  // response shapes
  static std::string first_text_part(const std::string& body) {
    auto j = nlohmann::json::parse(body, nullptr, false);
    if (j.is_discarded()) {
      throw_provider("llm provider: malformed response body");
    }
    if (j.contains("choices") && j["choices"].is_array() &&
        !j["choices"].empty()) {
      const auto& c = j["choices"][0];
      if (c.contains("message") && c["message"].contains("content")) {
        return c["message"]["content"].get<std::string>();
      }
      if (c.contains("text")) return c["text"].get<std::string>();
    }
    if (j.contains("content") && j["content"].is_array() &&
        !j["content"].empty() && j["content"][0].contains("text")) {
      return j["content"][0]["text"].get<std::string>();
    }
    if (j.contains("text")) return j["text"].get<std::string>();
    throw_provider("llm provider: no text part in response");
  }

  LlmProviderConfig cfg_;
  std::string key_;
};
#endif

}  // namespace

std::unique_ptr<LlmProvider> make_llm_provider(const LlmProviderConfig& cfg) {
  if (cfg.temperature != 0.0) {
    throw_contract("llm provider: temperature is fixed at 0");
  }
  if (cfg.kind == LlmKind::Replay) {
    if (cfg.fixture_path.empty()) {
      throw_input("llm provider: fixture_path missing for REPLAY");
    }
    return std::make_unique<ReplayProvider>(cfg.fixture_path);
  }
#ifdef VCC_NO_HTTPLIB
  throw_provider("remote llm disabled in this build");
#else
  return std::make_unique<RemoteLlmProvider>(cfg);
#endif
}

ValidationVerdict validate_candidate(const LlmProvider& provider,
                                     const LlmProviderConfig& cfg,
                                     const ValidationRequest& req, int runs) {
  std::size_t combined = req.original_function.size() +
                         req.fixed_function.size() +
                         req.cloned_function.size();
  if (cfg.prompt_char_budget && combined > cfg.prompt_char_budget) {
    ValidationVerdict v;
    v.parse_status = ParseStatus::Failed;
    v.is_vulnerable = false;
    v.confidence_level = 0;
    v.justification = "PROMPT_TOO_LARGE";
    return v;
  }

  std::string prompt = render_prompt(req);
  std::vector<ValidationVerdict> results;
  results.reserve(static_cast<std::size_t>(std::max(1, runs)));
  for (int r = 0; r < std::max(1, runs); ++r) {
    results.push_back(extract_verdict(provider.complete(prompt)));
  }

  std::vector<const ValidationVerdict*> voting;
  for (const auto& v : results) {
    if (v.parse_status != ParseStatus::Failed) voting.push_back(&v);
  }
  if (voting.empty()) {
    ValidationVerdict v = results.front();
    v.parse_status = ParseStatus::Failed;
    v.is_vulnerable = false;
    v.confidence_level = 0;
    return v;
  }

  std::size_t yes = 0;
  for (const auto* v : voting) {
    if (v->is_vulnerable) ++yes;
  }
  bool verdict = yes * 2 >= voting.size();  // tie errs toward review

  std::vector<int> confidences;
  for (const auto* v : voting) confidences.push_back(v->confidence_level);
  std::sort(confidences.begin(), confidences.end());
  int median = confidences[(confidences.size() - 1) / 2];

  for (const auto* v : voting) {
    if (v->is_vulnerable == verdict) {
      ValidationVerdict out = *v;
      out.is_vulnerable = verdict;
      out.confidence_level = median;
      return out;
    }
  }
  ValidationVerdict out = *voting.front();
  out.is_vulnerable = verdict;
  out.confidence_level = median;
  return out;
}

}  // namespace vcc
