#include "vcc/index.hpp"

#include <algorithm>
#include <cmath>

#include "vcc/error.hpp"

namespace vcc {

VectorIndex VectorIndex::build(std::vector<EmbeddingVector> vectors) {
  if (vectors.empty()) throw_input("VectorIndex: empty input");
  VectorIndex idx;
  idx.dimension_ = static_cast<int>(vectors.front().values.size());
  for (const auto& v : vectors) {
    if (v.values.size() != idx.dimension_) {
      throw_contract("VectorIndex: dimension mismatch for " + v.source_id);
    }
    double norm = stable_norm(v.values);
    if (std::abs(norm - 1.0) > 1e-6) {
      throw_contract("VectorIndex: vector not unit-norm: " + v.source_id);
    }
  }
  idx.entries_ = std::move(vectors);
  idx.by_id_.reserve(idx.entries_.size());
  for (std::size_t i = 0; i < idx.entries_.size(); ++i) {
    idx.by_id_.emplace_back(idx.entries_[i].source_id, i);
  }
  std::sort(idx.by_id_.begin(), idx.by_id_.end());
  for (std::size_t i = 1; i < idx.by_id_.size(); ++i) {
    if (idx.by_id_[i].first == idx.by_id_[i - 1].first) {
      throw_contract("VectorIndex: duplicate id: " + idx.by_id_[i].first);
    }
  }
  return idx;
}

std::size_t VectorIndex::find(const std::string& id) const {
  auto it = std::lower_bound(
      by_id_.begin(), by_id_.end(), id,
      [](const auto& p, const std::string& key) { return p.first < key; });
  if (it == by_id_.end() || it->first != id) return npos;
  return it->second;
}

std::vector<SearchHit> VectorIndex::scored(const Vec& q) const {
  if (q.size() != dimension_) {
    throw_contract("VectorIndex: query dimension mismatch");
  }
  std::vector<SearchHit> hits;
  hits.reserve(entries_.size());
  for (const auto& e : entries_) {
    hits.push_back({e.source_id, stable_dot(q, e.values)});
  }
  return hits;
}

namespace {

// score descending, insertion order for ties; hits arrive in insertion
// order, so a stable sort gives exactly that.
void order_hits(std::vector<SearchHit>& hits) {
  std::stable_sort(hits.begin(), hits.end(),
                   [](const SearchHit& a, const SearchHit& b) {
                     return a.score > b.score;
                   });
}

}  // namespace

std::vector<SearchHit> VectorIndex::query_threshold(const Vec& q,
                                                    double threshold) const {
  std::vector<SearchHit> hits = scored(q);
  hits.erase(std::remove_if(
                 hits.begin(), hits.end(),
                 [&](const SearchHit& h) { return h.score < threshold; }),
             hits.end());
  order_hits(hits);
  return hits;
}

std::vector<SearchHit> VectorIndex::query_topk(const Vec& q, int k) const {
  if (k < 1) throw_contract("query_topk: k must be >= 1");
  std::vector<SearchHit> hits = scored(q);
  order_hits(hits);
  if (hits.size() > static_cast<std::size_t>(k)) {
    hits.resize(static_cast<std::size_t>(k));
  }
  return hits;
}

}  // namespace vcc
