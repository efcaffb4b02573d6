#pragma once

#include "vcc/metrics_types.hpp"

namespace vcc {

// |top_k intersect G| / k. Fewer than k results count as misses: the
// denominator stays k.
double precision_at_k(const RankedList& ranked, const EvalQuery& truth, int k);

// (1/|G|) * sum_i P@i * rel(i) over the whole result list. Throws on empty
// ground truth; empty results give 0.
double average_precision(const RankedList& ranked, const EvalQuery& truth);

// Arithmetic mean of AP over all queries, zero-AP queries included.
double mean_average_precision(
    const std::vector<std::pair<RankedList, EvalQuery>>& queries);

// precision = tp/(tp+fp), recall = tp/(tp+fn), f1 = harmonic mean; each 0
// when its denominator is 0. Values are fractions in [0,1].
ClassificationMetrics classification_metrics(std::uint64_t tp,
                                             std::uint64_t fp,
                                             std::uint64_t fn);

}  // namespace vcc
