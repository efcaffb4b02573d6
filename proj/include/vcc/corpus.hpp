#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vcc/lexer.hpp"

namespace vcc {

struct FunctionRecord {
  std::string id;      // md5 of repo + path + line span
  std::string repo;
  std::string path;
  Language language = Language::C;
  std::string name;    // empty if anonymous
  std::uint32_t start_line = 1;  // 1-based, inclusive
  std::uint32_t end_line = 1;
  std::string text;    // byte-exact slice of the (sanitized) source lines
};

struct RepoManifestEntry {
  std::string slug;
  std::string clone_url;
  Language language = Language::C;
  double months_since_last_commit = 0.0;
  double pr_merge_rate = 0.0;  // in [0,1]
  std::uint64_t stars = 0;
};

struct FunctionPair {
  FunctionRecord vulnerable;
  FunctionRecord fixed;
  std::string cve_id;
  std::string cwe_id;
};

std::string function_record_id(std::string_view repo, std::string_view path,
                               std::uint32_t start_line,
                               std::uint32_t end_line);

// Extracts every function definition (C/C++) or method/constructor body
// (Java, including nested and anonymous class methods) in source order.
// Declarations without bodies are excluded. Invalid UTF-8 is replaced with
// U+FFFD before parsing. Extraction is best-effort on broken input: whatever
// parses is returned.
std::vector<FunctionRecord> parse_functions(std::string_view file_text,
                                            Language language,
                                            std::string_view repo = "",
                                            std::string_view path = "");

// Recursively walks root, dispatching files by extension
// (.c/.h -> C, .cc/.cpp/.cxx/.hpp -> CPP, .java -> JAVA). Unreadable files
// are logged to stderr and skipped. Output is ordered by (path, start_line).
// Distinct files are parsed concurrently.
std::vector<FunctionRecord> ingest_repository(
    const std::filesystem::path& root, const std::set<Language>& languages,
    std::string_view repo_slug = "");

// Keeps entries with months_since_last_commit <= max_months and
// pr_merge_rate strictly above min_merge_rate. Order preserved.
std::vector<RepoManifestEntry> filter_manifest(
    const std::vector<RepoManifestEntry>& entries, double max_months = 10.0,
    double min_merge_rate = 0.10);

// Drops pairs whose vulnerable-function line count falls strictly below the
// low_pct-th or strictly above the (100-high_pct)-th nearest-rank percentile.
// Throws on empty input.
std::vector<FunctionPair> filter_by_length_percentile(
    const std::vector<FunctionPair>& pairs, int low_pct = 5, int high_pct = 5);

// Extension dispatch used by ingest_repository; false for unrelated files.
bool language_for_extension(const std::filesystem::path& p, Language& out);

}  // namespace vcc
