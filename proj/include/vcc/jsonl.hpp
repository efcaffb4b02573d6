#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "vcc/corpus.hpp"

namespace vcc {

// Insertion-ordered so serialized field order matches the documented schema.
using Json = nlohmann::ordered_json;

// One JSON value per line. Blank lines are skipped; a malformed line throws
// an Input error naming the line number.
std::vector<Json> read_jsonl(const std::filesystem::path& path);

// Writes lines atomically: temp file in the same directory, then rename.
void write_jsonl(const std::filesystem::path& path,
                 const std::vector<Json>& lines);

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content);

Json to_json(const FunctionRecord& r);
FunctionRecord function_record_from_json(const Json& j);

Json to_json(const RepoManifestEntry& e);
RepoManifestEntry manifest_entry_from_json(const Json& j);

Json to_json(const FunctionPair& p);
FunctionPair function_pair_from_json(const Json& j);

std::vector<FunctionRecord> read_corpus(const std::filesystem::path& path);
std::vector<RepoManifestEntry> read_manifest(const std::filesystem::path& path);
std::vector<FunctionPair> read_pairs(const std::filesystem::path& path);

}  // namespace vcc
