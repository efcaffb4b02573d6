#pragma once

#include <string>
#include <vector>

#include "vcc/embed.hpp"

namespace vcc {

struct SearchHit {
  std::string source_id;
  double score = 0.0;
};

// Exact exhaustive inner-product search over unit vectors. Insertion order
// is the tie-break everywhere, so results match a naive scan exactly.
// Immutable after build; concurrent const queries need no coordination.
class VectorIndex {
 public:
  // Validates non-empty input, uniform dimension, unique ids, unit norms.
  static VectorIndex build(std::vector<EmbeddingVector> vectors);

  // All entries with dot(q, e) >= threshold, score-descending, ties by
  // insertion order.
  std::vector<SearchHit> query_threshold(const Vec& q, double threshold) const;

  // Top k by the same ordering (fewer if the index is smaller).
  std::vector<SearchHit> query_topk(const Vec& q, int k) const;

  int dimension() const { return dimension_; }
  std::size_t size() const { return entries_.size(); }
  const EmbeddingVector& at(std::size_t i) const { return entries_[i]; }

  // Index of an id, or npos.
  std::size_t find(const std::string& id) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  VectorIndex() = default;
  std::vector<EmbeddingVector> entries_;
  std::vector<std::pair<std::string, std::size_t>> by_id_;  // sorted
  int dimension_ = 0;

  std::vector<SearchHit> scored(const Vec& q) const;
};

}  // namespace vcc
