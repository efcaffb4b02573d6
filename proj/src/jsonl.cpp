#include "vcc/jsonl.hpp"

#include <unistd.h>

#include <atomic>
#include <fstream>

#include "vcc/error.hpp"

namespace vcc {

std::vector<Json> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_input("cannot open " + path.string());
  std::vector<Json> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw_input(path.string() + ":" + std::to_string(lineno) +
                  ": malformed JSON line");
    }
    out.push_back(std::move(j));
  }
  return out;
}

namespace {

std::filesystem::path temp_sibling(const std::filesystem::path& path) {
  static std::atomic<unsigned> counter{0};
  std::filesystem::path dir = path.parent_path();
  std::string name = path.filename().string() + ".tmp" +
                     std::to_string(counter.fetch_add(1)) + "-" +
                     std::to_string(::getpid());
  return dir / name;
}

}  // namespace

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  if (!path.parent_path().empty()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::filesystem::path tmp = temp_sibling(path);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw_input("cannot write " + tmp.string());
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out) throw_input("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_jsonl(const std::filesystem::path& path,
                 const std::vector<Json>& lines) {
  std::string buf;
  for (const Json& j : lines) {
    buf += j.dump();
    buf += '\n';
  }
  write_text_atomic(path, buf);
}

Json to_json(const FunctionRecord& r) {
  // field order fixed for byte-stable output
  Json j = Json::object();
  j["id"] = r.id;
  j["repo"] = r.repo;
  j["path"] = r.path;
  j["language"] = language_name(r.language);
  j["name"] = r.name;
  j["start_line"] = r.start_line;
  j["end_line"] = r.end_line;
  j["text"] = r.text;
  return j;
}

FunctionRecord function_record_from_json(const Json& j) {
  FunctionRecord r;
  r.id = j.at("id").get<std::string>();
  r.repo = j.at("repo").get<std::string>();
  r.path = j.at("path").get<std::string>();
  Language lang;
  if (!language_from_name(j.at("language").get<std::string>(), lang)) {
    throw_input("unsupported language: " +
                j.at("language").get<std::string>());
  }
  r.language = lang;
  r.name = j.at("name").get<std::string>();
  r.start_line = j.at("start_line").get<std::uint32_t>();
  r.end_line = j.at("end_line").get<std::uint32_t>();
  r.text = j.at("text").get<std::string>();
  return r;
}

Json to_json(const RepoManifestEntry& e) {
  Json j = Json::object();
  j["slug"] = e.slug;
  j["clone_url"] = e.clone_url;
  j["language"] = language_name(e.language);
  j["months_since_last_commit"] = e.months_since_last_commit;
  j["pr_merge_rate"] = e.pr_merge_rate;
  j["stars"] = e.stars;
  return j;
}

RepoManifestEntry manifest_entry_from_json(const Json& j) {
  RepoManifestEntry e;
  e.slug = j.at("slug").get<std::string>();
  e.clone_url = j.at("clone_url").get<std::string>();
  Language lang;
  if (!language_from_name(j.at("language").get<std::string>(), lang)) {
    throw_input("unsupported language: " +
                j.at("language").get<std::string>());
  }
  e.language = lang;
  e.months_since_last_commit =
      j.at("months_since_last_commit").get<double>();
  e.pr_merge_rate = j.at("pr_merge_rate").get<double>();
  if (e.pr_merge_rate < 0.0 || e.pr_merge_rate > 1.0) {
    throw_contract("pr_merge_rate out of [0,1] for " + e.slug);
  }
  e.stars = j.at("stars").get<std::uint64_t>();
  return e;
}

Json to_json(const FunctionPair& p) {
  Json j = Json::object();
  j["vulnerable"] = to_json(p.vulnerable);
  j["fixed"] = to_json(p.fixed);
  j["cve_id"] = p.cve_id;
  j["cwe_id"] = p.cwe_id;
  return j;
}

FunctionPair function_pair_from_json(const Json& j) {
  FunctionPair p;
  p.vulnerable = function_record_from_json(j.at("vulnerable"));
  p.fixed = function_record_from_json(j.at("fixed"));
  p.cve_id = j.at("cve_id").get<std::string>();
  p.cwe_id = j.at("cwe_id").get<std::string>();
  if (p.vulnerable.id == p.fixed.id) {
    throw_contract("pair has identical vulnerable/fixed ids: " + p.cve_id);
  }
  return p;
}

std::vector<FunctionRecord> read_corpus(const std::filesystem::path& path) {
  std::vector<FunctionRecord> out;
  for (const Json& j : read_jsonl(path)) {
    out.push_back(function_record_from_json(j));
  }
  return out;
}

std::vector<RepoManifestEntry> read_manifest(
    const std::filesystem::path& path) {
  std::vector<RepoManifestEntry> out;
  for (const Json& j : read_jsonl(path)) {
    out.push_back(manifest_entry_from_json(j));
  }
  return out;
}

std::vector<FunctionPair> read_pairs(const std::filesystem::path& path) {
  std::vector<FunctionPair> out;
  for (const Json& j : read_jsonl(path)) {
    out.push_back(function_pair_from_json(j));
  }
  return out;
}

}  // namespace vcc
