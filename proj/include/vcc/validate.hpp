#pragma once

#include <memory>
#include <string>
#include <unordered_map>

namespace vcc {

struct ValidationRequest {
  std::string original_function;  // known vulnerable
  std::string fixed_function;     // patched version
  std::string cloned_function;    // to be assessed
  std::string entry_id;
  std::string target_id;
};

enum class ParseStatus { Clean, Repaired, Fallback, Failed };

const char* parse_status_name(ParseStatus s);
bool parse_status_from_name(std::string_view name, ParseStatus& out);

struct ValidationVerdict {
  bool is_vulnerable = false;
  int confidence_level = 0;  // 1..5 when parse_status != Failed
  std::string justification;
  ParseStatus parse_status = ParseStatus::Failed;
  std::string raw_response;
};

enum class LlmKind { Remote, Replay };

struct LlmProviderConfig {
  LlmKind kind = LlmKind::Replay;
  std::string endpoint_url;               // REMOTE
  std::string model_name;                 // REMOTE
  std::string api_key_env = "LLM_API_KEY";  // REMOTE
  std::string fixture_path;               // REPLAY
  double temperature = 0.0;               // fixed
  int runs = 1;
  int max_inflight = 4;
  std::size_t prompt_char_budget = 24000;  // combined function-text budget
};

// Fills the validation prompt template with the three function slots.
// Deterministic; output is byte-identical for identical inputs.
// Throws if any slot is empty.
std::string render_prompt(const ValidationRequest& req);

std::string prompt_digest(const std::string& prompt);

// Never throws. Pipeline: marker-delimited (or first balanced) JSON block,
// strict parse -> CLEAN; invalid-escape repair then reparse -> REPAIRED;
// regex field extraction -> FALLBACK; otherwise FAILED.
ValidationVerdict extract_verdict(const std::string& response_text);

// The repair pass used by extract_verdict: doubles any backslash whose next
// character is not a valid JSON escape introducer. Idempotent; leaves valid
// escape sequences alone.
std::string repair_invalid_escapes(const std::string& s);

class LlmProvider {
 public:
  virtual ~LlmProvider() = default;
  virtual std::string complete(const std::string& prompt) const = 0;
};

// REPLAY providers load the fixture once; lookups are by prompt digest.
std::unique_ptr<LlmProvider> make_llm_provider(const LlmProviderConfig& cfg);

// Runs `runs` independent calls and aggregates: majority vote on
// is_vulnerable (tie -> vulnerable), lower-median confidence over non-FAILED
// runs, justification from the first majority-agreeing run. All runs FAILED
// yields a FAILED verdict. Requests whose combined texts exceed the prompt
// budget are answered FAILED with a PROMPT_TOO_LARGE justification, without
// touching the provider.
ValidationVerdict validate_candidate(const LlmProvider& provider,
                                     const LlmProviderConfig& cfg,
                                     const ValidationRequest& req, int runs);

}  // namespace vcc
