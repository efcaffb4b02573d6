#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace vcc {

struct EvalQuery {
  std::string query_id;
  std::set<std::string> ground_truth;
};

struct RankedList {
  std::string query_id;
  std::vector<std::string> results;  // best first, no duplicates
};

struct ClassificationMetrics {
  std::uint64_t tp = 0, fp = 0, fn = 0;
  double precision = 0.0;  // fractions in [0,1]
  double recall = 0.0;
  double f1 = 0.0;
};

struct MetricReport {
  std::map<std::string, double> per_query_ap;
  double map = 0.0;
  std::map<int, double> p_at;  // k -> mean P@k over queries
  ClassificationMetrics classification;
};

}  // namespace vcc
