#include "vcc/metrics.hpp"

#include "vcc/error.hpp"

namespace vcc {

double precision_at_k(const RankedList& ranked, const EvalQuery& truth,
                      int k) {
  if (k < 1) throw_contract("precision_at_k: k must be >= 1");
  std::size_t upto = std::min<std::size_t>(ranked.results.size(),
                                           static_cast<std::size_t>(k));
  std::size_t hits = 0;
  for (std::size_t i = 0; i < upto; ++i) {
    if (truth.ground_truth.count(ranked.results[i])) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(k);
}

double average_precision(const RankedList& ranked, const EvalQuery& truth) {
  if (truth.ground_truth.empty()) {
    throw_input("average_precision: empty ground truth");
  }
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ranked.results.size(); ++i) {
    if (!truth.ground_truth.count(ranked.results[i])) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(i + 1);
  }
  return sum / static_cast<double>(truth.ground_truth.size());
}

double mean_average_precision(
    const std::vector<std::pair<RankedList, EvalQuery>>& queries) {
  if (queries.empty()) throw_input("mean_average_precision: no queries");
  double sum = 0.0;
  for (const auto& [ranked, truth] : queries) {
    sum += average_precision(ranked, truth);
  }
  return sum / static_cast<double>(queries.size());
}

ClassificationMetrics classification_metrics(std::uint64_t tp,
                                             std::uint64_t fp,
                                             std::uint64_t fn) {
  ClassificationMetrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.precision = tp + fp ? static_cast<double>(tp) / (tp + fp) : 0.0;
  m.recall = tp + fn ? static_cast<double>(tp) / (tp + fn) : 0.0;
  m.f1 = m.precision + m.recall > 0.0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

}  // namespace vcc
