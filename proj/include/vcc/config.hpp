#pragma once

#include <filesystem>
#include <set>
#include <string>

#include "vcc/bench.hpp"
#include "vcc/detect.hpp"
#include "vcc/embed.hpp"
#include "vcc/validate.hpp"

namespace vcc {

struct PipelinePaths {
  std::string repo_root;
  std::string manifest;
  std::string corpus;
  std::string pairs;
  std::string embeddings;
  std::string candidates;
  std::string verdicts;
  std::string metrics_json;
  std::string metrics_md;
  std::string report_json;
  std::string report_md;
  std::string bench_dir;
  std::string truth;
};

struct PipelineConfig {
  PipelinePaths paths;
  DetectConfig detect;
  EmbedProviderConfig embed;
  LlmProviderConfig llm;
  BenchPlan bench;
  std::string bench_fixture_path;  // REPLAY fixture for clone generation
  std::uint64_t seed = 0;
  std::string repo_slug;
  std::set<Language> languages;  // empty = all supported

  std::string config_fingerprint;  // md5 of the config file bytes
  std::filesystem::path base_dir;  // config file directory

  // Relative paths in the config resolve against the config file location.
  std::string resolve(const std::string& p) const;
};

PipelineConfig load_config(const std::filesystem::path& path);

}  // namespace vcc
