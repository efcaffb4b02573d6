#include "vcc/detect.hpp"

#include <algorithm>
#include <unordered_map>

#include "vcc/error.hpp"
#include "vcc/validate.hpp"

namespace vcc {

std::vector<CandidateClone> retrieve_candidates(
    const std::vector<VulnEntry>& entries, const VectorIndex& target_index,
    const DetectConfig& config) {
  if (config.threshold_t <= 0.0 || config.threshold_t > 1.0) {
    throw_contract("detect: threshold must be in (0,1]");
  }

  // target -> (best entry index, sim_vuln); ties keep the earlier entry
  struct Assignment {
    std::size_t entry = 0;
    double sim = 0.0;
  };
  std::unordered_map<std::string, Assignment> best;
  // remember per-entry hit order for deterministic output
  std::vector<std::vector<SearchHit>> hits_per_entry(entries.size());

  for (std::size_t e = 0; e < entries.size(); ++e) {
    auto hits =
        target_index.query_threshold(entries[e].vulnerable_vec,
                                     config.threshold_t);
    for (const auto& h : hits) {
      if (h.source_id == entries[e].entry_id) continue;  // self-clone
      auto it = best.find(h.source_id);
      if (it == best.end() || h.score > it->second.sim) {
        best[h.source_id] = {e, h.score};
      }
    }
    hits_per_entry[e] = std::move(hits);
  }

  std::vector<CandidateClone> out;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    std::size_t emitted = 0;
    for (const auto& h : hits_per_entry[e]) {
      auto it = best.find(h.source_id);
      if (it == best.end() || it->second.entry != e) continue;
      if (config.max_candidates_per_query &&
          emitted >= config.max_candidates_per_query) {
        break;
      }
      std::size_t t = target_index.find(h.source_id);
      CandidateClone c;
      c.entry_id = entries[e].entry_id;
      c.target_id = h.source_id;
      c.sim_vuln = h.score;
      c.sim_fixed = cosine(target_index.at(t).values, entries[e].fixed_vec);
      c.kept = false;
      c.rank_score = h.score;
      out.push_back(std::move(c));
      ++emitted;
    }
  }
  return out;
}

std::vector<CandidateClone> filter_against_fixed(
    std::vector<CandidateClone> candidates) {
  for (auto& c : candidates) {
    c.kept = c.sim_fixed <= c.sim_vuln;  // tie favors suspicion
  }
  return candidates;
}

std::vector<RankedList> rank_candidates(
    const std::vector<CandidateClone>& candidates,
    const std::map<std::string, ValidationVerdict>* verdicts) {
  std::vector<std::string> entry_order;
  std::unordered_map<std::string, std::vector<const CandidateClone*>> grouped;
  for (const auto& c : candidates) {
    if (!c.kept) continue;
    auto [it, fresh] = grouped.try_emplace(c.entry_id);
    if (fresh) entry_order.push_back(c.entry_id);
    it->second.push_back(&c);
  }

  std::vector<RankedList> out;
  out.reserve(entry_order.size());
  for (const auto& entry_id : entry_order) {
    auto list = grouped[entry_id];
    if (verdicts == nullptr) {
      std::sort(list.begin(), list.end(),
                [](const CandidateClone* a, const CandidateClone* b) {
                  if (a->sim_vuln != b->sim_vuln)
                    return a->sim_vuln > b->sim_vuln;
                  return a->target_id < b->target_id;
                });
    } else {
      // drop candidates the validator rejected or could not parse
      std::vector<const CandidateClone*> keep;
      for (const CandidateClone* c : list) {
        auto it = verdicts->find(c->target_id);
        if (it == verdicts->end()) continue;
        const ValidationVerdict& v = it->second;
        if (v.parse_status == ParseStatus::Failed || !v.is_vulnerable)
          continue;
        keep.push_back(c);
      }
      auto conf = [&](const CandidateClone* c) {
        return verdicts->at(c->target_id).confidence_level;
      };
      std::sort(keep.begin(), keep.end(),
                [&](const CandidateClone* a, const CandidateClone* b) {
                  int ca = conf(a), cb = conf(b);
                  if (ca != cb) return ca > cb;
                  if (a->sim_vuln != b->sim_vuln)
                    return a->sim_vuln > b->sim_vuln;
                  return a->target_id < b->target_id;
                });
      list = std::move(keep);
    }
    RankedList rl;
    rl.query_id = entry_id;
    for (const CandidateClone* c : list) rl.results.push_back(c->target_id);
    out.push_back(std::move(rl));
  }
  return out;
}

}  // namespace vcc
