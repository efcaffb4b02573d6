#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "vcc/corpus.hpp"
#include "vcc/validate.hpp"

namespace vcc {

enum class CloneType { T1, T2, T3, T4 };
enum class OriginSide { Vulnerable, Fixed };

const char* clone_type_name(CloneType t);
bool clone_type_from_name(std::string_view name, CloneType& out);
const char* origin_side_name(OriginSide s);

struct CloneRecord {
  std::string clone_id;
  std::string origin_pair_id;  // the pair's cve_id
  OriginSide origin_side = OriginSide::Vulnerable;
  CloneType clone_type = CloneType::T1;
  std::string text;
  bool label = false;  // true iff origin_side == Vulnerable
  std::uint64_t token_diff = 0;
};

struct ClonePlan {
  int t1 = 1;
  int t2 = 1;
  int t3 = 2;
  int t4 = 1;
  int per_function() const { return t1 + t2 + t3 + t4; }
};

struct BenchPlan {
  int pairs_per_cwe_cap = 10;
  ClonePlan clones_per_function;
  int target_pairs = 100;
  std::vector<std::string> cwe_priority;  // defaults to the 2024 Top-25 subset
};

std::vector<std::string> default_cwe_priority();

struct CloneTypeStats {
  std::uint64_t clones = 0;
  std::uint64_t positives = 0;
  std::uint64_t negatives = 0;
  double mean_token_diff = 0.0;
};

struct BenchStats {
  CloneTypeStats per_type[4];  // indexed by CloneType
  std::uint64_t total = 0;
  std::uint64_t positives = 0;
  std::uint64_t negatives = 0;
};

// Deterministic per-CWE capped sample: CWEs in priority order (then pool
// first-appearance order), selection sampling inside each group, stopping at
// target_pairs. A pool that cannot fill the target is returned whole with a
// warning.
std::vector<FunctionPair> cwe_sample(const std::vector<FunctionPair>& pool,
                                     const BenchPlan& plan,
                                     std::uint64_t seed);

// Whitespace/comment-only transformation. The emitted clone's non-comment
// token stream is byte-identical to the origin's, and at least one comment
// is always inserted so the token diff is positive.
std::string gen_type1(const std::string& text, Language language,
                      std::uint64_t seed);

// Renders the type-specific generation prompt (T2/T3/T4), asks the provider,
// extracts the fenced code block, and verifies the clone parses in the same
// language. REMOTE providers get 2 extra attempts on unparseable output.
std::string gen_llm_clone(const LlmProvider& provider, LlmKind kind,
                          const std::string& text, Language language,
                          CloneType clone_type, std::uint64_t seed);

// The rendered generation prompt; exposed so REPLAY fixtures can be built.
std::string render_clone_prompt(const std::string& text, Language language,
                                CloneType clone_type, std::uint64_t seed);

// Template text per clone type, written into the archive's prompts/ dir.
std::string clone_prompt_template(CloneType t);
extern const char* const kClonePromptVersion;

// Token-level edit distance over lexical tokens including comment word
// tokens (comments split on whitespace) and excluding pure whitespace.
std::uint64_t token_diff(const std::string& a, const std::string& b,
                         Language language);

struct Benchmark {
  std::vector<CloneRecord> clones;
  std::vector<FunctionPair> pairs;
  BenchStats stats;
};

// Runs the per-pair, per-side plan (1xT1, 1xT2, 2xT3, 1xT4 by default) and
// collects Table-shaped statistics.
Benchmark assemble_benchmark(const std::vector<FunctionPair>& pairs,
                             const BenchPlan& plan,
                             const LlmProvider& provider, LlmKind kind,
                             std::uint64_t seed);

// clones.jsonl, pairs.jsonl, stats.json, prompts/, manifest.json
void write_benchmark_archive(const std::filesystem::path& dir,
                             const Benchmark& bench, const BenchPlan& plan,
                             std::uint64_t seed,
                             const std::string& provider_fingerprint);

}  // namespace vcc
