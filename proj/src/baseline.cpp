#include "vcc/baseline.hpp"

#include <unordered_map>

#include "vcc/normalize.hpp"

namespace vcc {

std::vector<HashMatch> run_hash_baseline(
    const std::vector<FunctionPair>& entries,
    const std::vector<FunctionRecord>& targets) {
  struct EntryDigests {
    std::string entry_id;
    std::string vulnerable;
    std::string fixed;
  };
  std::vector<EntryDigests> digests;
  digests.reserve(entries.size());
  for (const auto& pair : entries) {
    EntryDigests d;
    d.entry_id = pair.vulnerable.id;
    d.vulnerable = abstract_function(pair.vulnerable).digest;
    d.fixed = abstract_function(pair.fixed).digest;
    digests.push_back(std::move(d));
  }

  std::unordered_map<std::string, std::vector<std::size_t>> by_vuln_digest;
  for (std::size_t i = 0; i < digests.size(); ++i) {
    by_vuln_digest[digests[i].vulnerable].push_back(i);
  }

  std::vector<HashMatch> out;
  for (const auto& target : targets) {
    std::string digest = abstract_function(target).digest;
    auto it = by_vuln_digest.find(digest);
    if (it == by_vuln_digest.end()) continue;
    for (std::size_t i : it->second) {
      if (digests[i].fixed == digest) continue;  // no-signal abstraction
      out.push_back({digests[i].entry_id, target.id, digest});
    }
  }
  return out;
}

}  // namespace vcc
