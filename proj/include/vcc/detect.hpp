#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vcc/index.hpp"
#include "vcc/metrics_types.hpp"

namespace vcc {

struct VulnEntry {
  std::string entry_id;   // id of the vulnerable function record
  std::string cve_id;
  std::string cwe_id;
  std::string vulnerable_text;  // preprocessed
  std::string fixed_text;       // preprocessed
  Vec vulnerable_vec;
  Vec fixed_vec;
};

struct CandidateClone {
  std::string entry_id;
  std::string target_id;
  double sim_vuln = 0.0;
  double sim_fixed = 0.0;
  bool kept = false;
  double rank_score = 0.0;
};

struct DetectConfig {
  double threshold_t = 0.7;
  static constexpr double kBenchmarkDefault = 0.7;
  static constexpr double kRealWorldDefault = 0.85;
  std::size_t max_candidates_per_query = 0;  // 0 = unlimited
};

struct ValidationVerdict;  // validate.hpp

// For every entry, query the target index at the configured threshold, then
// assign each retrieved target to its single most-similar entry (ties go to
// the earlier entry). A target identical to the entry's own function id is
// dropped as a trivial self-clone. sim_fixed is the cosine between target
// and the entry's fixed vector; kept stays false until filtering.
std::vector<CandidateClone> retrieve_candidates(
    const std::vector<VulnEntry>& entries, const VectorIndex& target_index,
    const DetectConfig& config);

// kept = (sim_fixed <= sim_vuln). Discarded candidates remain in the output
// with kept=false for audit; only kept ones are ranked.
std::vector<CandidateClone> filter_against_fixed(
    std::vector<CandidateClone> candidates);

// Per-entry ranked lists over kept candidates. Without verdicts the order is
// sim_vuln desc, ties by target_id. With verdicts: is_vulnerable desc,
// confidence desc, sim_vuln desc; candidates the validator rejected are
// dropped. Entries appear in first-candidate order.
std::vector<RankedList> rank_candidates(
    const std::vector<CandidateClone>& candidates,
    const std::map<std::string, ValidationVerdict>* verdicts = nullptr);

}  // namespace vcc
