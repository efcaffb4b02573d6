#include "vcc/config.hpp"

#include <unordered_set>

#include "vcc/digest.hpp"
#include "vcc/error.hpp"
#include "vcc/jsonl.hpp"
#include "vcc/text.hpp"

namespace vcc {

std::string PipelineConfig::resolve(const std::string& p) const {
  if (p.empty()) return p;
  std::filesystem::path fp(p);
  if (fp.is_absolute()) return p;
  return (base_dir / fp).string();
}

namespace {

std::string get_str(const Json& j, const char* key, const std::string& dflt) {
  if (!j.contains(key)) return dflt;
  return j.at(key).get<std::string>();
}

template <typename T>
T get_num(const Json& j, const char* key, T dflt) {
  if (!j.contains(key)) return dflt;
  return j.at(key).get<T>();
}

}  // namespace

PipelineConfig load_config(const std::filesystem::path& path) {
  std::string raw;
  if (!read_file(path.string(), raw)) {
    throw_input("cannot read config: " + path.string());
  }
  Json j = Json::parse(raw, nullptr, false);
  if (j.is_discarded()) {
    throw_input("config is not valid JSON: " + path.string());
  }

  PipelineConfig cfg;
  cfg.config_fingerprint = md5_hex(raw);
  cfg.base_dir = std::filesystem::absolute(path).parent_path();
  cfg.seed = get_num<std::uint64_t>(j, "seed", 0);
  cfg.repo_slug = get_str(j, "repo_slug", "");

  if (j.contains("languages")) {
    for (const auto& name : j.at("languages")) {
      Language lang;
      if (!language_from_name(name.get<std::string>(), lang)) {
        throw_input("config: unsupported language " +
                    name.get<std::string>());
      }
      cfg.languages.insert(lang);
    }
  }

  if (j.contains("paths")) {
    const Json& p = j.at("paths");
    cfg.paths.repo_root = get_str(p, "repo_root", "");
    cfg.paths.manifest = get_str(p, "manifest", "");
    cfg.paths.corpus = get_str(p, "corpus", "corpus.jsonl");
    cfg.paths.pairs = get_str(p, "pairs", "pairs.jsonl");
    cfg.paths.embeddings = get_str(p, "embeddings", "embeddings.jsonl");
    cfg.paths.candidates = get_str(p, "candidates", "candidates.jsonl");
    cfg.paths.verdicts = get_str(p, "verdicts", "verdicts.jsonl");
    cfg.paths.metrics_json = get_str(p, "metrics_json", "metrics.json");
    cfg.paths.metrics_md = get_str(p, "metrics_md", "metrics.md");
    cfg.paths.report_json = get_str(p, "report_json", "report.json");
    cfg.paths.report_md = get_str(p, "report_md", "report.md");
    cfg.paths.bench_dir = get_str(p, "bench_dir", "bench");
    cfg.paths.truth = get_str(p, "truth", "");
  }

  // output paths must not collide
  {
    std::unordered_set<std::string> seen;
    for (const std::string* out :
         {&cfg.paths.corpus, &cfg.paths.embeddings, &cfg.paths.candidates,
          &cfg.paths.verdicts, &cfg.paths.metrics_json, &cfg.paths.metrics_md,
          &cfg.paths.report_json, &cfg.paths.report_md}) {
      if (out->empty()) continue;
      if (!seen.insert(*out).second) {
        throw_input("config: output path used twice: " + *out);
      }
    }
  }

  if (j.contains("detect")) {
    const Json& d = j.at("detect");
    cfg.detect.threshold_t = get_num<double>(d, "threshold", 0.7);
    cfg.detect.max_candidates_per_query =
        get_num<std::size_t>(d, "max_candidates_per_query", 0);
  }

  if (j.contains("embed")) {
    const Json& e = j.at("embed");
    std::string kind = get_str(e, "kind", "local");
    if (kind == "local") {
      cfg.embed.kind = EmbedKind::LocalDeterministic;
    } else if (kind == "remote") {
      cfg.embed.kind = EmbedKind::Remote;
    } else {
      throw_input("config: embed.kind must be local or remote");
    }
    cfg.embed.endpoint_url = get_str(e, "endpoint_url", "");
    cfg.embed.model_name = get_str(e, "model_name", "");
    cfg.embed.api_key_env = get_str(e, "api_key_env", "EMBED_API_KEY");
    cfg.embed.dimension = get_num<int>(e, "dimension", 512);
    cfg.embed.batch_size = get_num<int>(e, "batch_size", 32);
    cfg.embed.max_inflight = get_num<int>(e, "max_inflight", 4);
    if (cfg.embed.dimension < 8) {
      throw_input("config: embed.dimension must be >= 8");
    }
    if (cfg.embed.batch_size < 1) {
      throw_input("config: embed.batch_size must be >= 1");
    }
  }

  if (j.contains("llm")) {
    const Json& l = j.at("llm");
    std::string kind = get_str(l, "kind", "replay");
    if (kind == "replay") {
      cfg.llm.kind = LlmKind::Replay;
    } else if (kind == "remote") {
      cfg.llm.kind = LlmKind::Remote;
    } else {
      throw_input("config: llm.kind must be replay or remote");
    }
    cfg.llm.endpoint_url = get_str(l, "endpoint_url", "");
    cfg.llm.model_name = get_str(l, "model_name", "");
    cfg.llm.api_key_env = get_str(l, "api_key_env", "LLM_API_KEY");
    cfg.llm.fixture_path = get_str(l, "fixture_path", "");
    cfg.llm.temperature = get_num<double>(l, "temperature", 0.0);
    cfg.llm.runs = get_num<int>(l, "runs", 1);
    cfg.llm.max_inflight = get_num<int>(l, "max_inflight", 4);
    cfg.llm.prompt_char_budget =
        get_num<std::size_t>(l, "prompt_char_budget", 24000);
    if (cfg.llm.temperature != 0.0) {
      throw_input("config: llm.temperature is fixed at 0");
    }
    if (cfg.llm.runs < 1) throw_input("config: llm.runs must be >= 1");
  }

  if (j.contains("bench")) {
    const Json& b = j.at("bench");
    cfg.bench.pairs_per_cwe_cap = get_num<int>(b, "pairs_per_cwe_cap", 10);
    cfg.bench.target_pairs = get_num<int>(b, "target_pairs", 100);
    if (b.contains("clones_per_function")) {
      const Json& c = b.at("clones_per_function");
      cfg.bench.clones_per_function.t1 = get_num<int>(c, "T1", 1);
      cfg.bench.clones_per_function.t2 = get_num<int>(c, "T2", 1);
      cfg.bench.clones_per_function.t3 = get_num<int>(c, "T3", 2);
      cfg.bench.clones_per_function.t4 = get_num<int>(c, "T4", 1);
    }
    if (b.contains("cwe_priority")) {
      for (const auto& cwe : b.at("cwe_priority")) {
        cfg.bench.cwe_priority.push_back(cwe.get<std::string>());
      }
    }
    cfg.bench_fixture_path = get_str(b, "fixture_path", "");
  }

  return cfg;
}

}  // namespace vcc
