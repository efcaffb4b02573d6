#pragma once

#include <string>
#include <vector>

#include "vcc/corpus.hpp"

namespace vcc {

struct HashMatch {
  std::string entry_id;   // vulnerable function record id
  std::string target_id;
  std::string digest;
};

// Abstracts every entry pair and every target; reports (entry, target)
// digest collisions against the vulnerable side. A target whose digest
// equals both the vulnerable and the fixed digest of the same entry is
// suppressed: identical abstractions carry no signal.
std::vector<HashMatch> run_hash_baseline(
    const std::vector<FunctionPair>& entries,
    const std::vector<FunctionRecord>& targets);

}  // namespace vcc
