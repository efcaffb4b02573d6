#include "vcc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "vcc/baseline.hpp"
#include "vcc/digest.hpp"
#include "vcc/error.hpp"
#include "vcc/jsonl.hpp"
#include "vcc/metrics.hpp"
#include "vcc/normalize.hpp"
#include "vcc/text.hpp"

namespace vcc {

namespace {

int guard(const char* what, const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const Error& e) {
    std::cerr << what << ": " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << what << ": " << e.what() << "\n";
    return 1;
  }
}

std::vector<EmbeddingVector> load_embedding_store(const std::string& path) {
  std::vector<EmbeddingVector> out;
  for (const Json& j : read_jsonl(path)) {
    EmbeddingVector ev;
    ev.source_id = j.at("source_id").get<std::string>();
    const auto& values = j.at("values");
    int dim = j.at("dim").get<int>();
    if (static_cast<int>(values.size()) != dim) {
      throw_contract("embedding store: dim field mismatch for " +
                     ev.source_id);
    }
    ev.values = Vec(dim);
    Eigen::Index k = 0;
    for (const auto& x : values) ev.values[k++] = x.get<double>();
    out.push_back(std::move(ev));
  }
  return out;
}

std::vector<VulnEntry> build_entries(const PipelineConfig& cfg,
                                     const std::vector<FunctionPair>& pairs) {
  std::vector<std::string> texts;
  std::vector<VulnEntry> entries;
  entries.reserve(pairs.size());
  for (const auto& p : pairs) {
    VulnEntry e;
    e.entry_id = p.vulnerable.id;
    e.cve_id = p.cve_id;
    e.cwe_id = p.cwe_id;
    e.vulnerable_text = preprocess(p.vulnerable.text, p.vulnerable.language);
    e.fixed_text = preprocess(p.fixed.text, p.fixed.language);
    if (e.vulnerable_text == e.fixed_text) {
      throw_contract("pair " + p.cve_id +
                     ": vulnerable and fixed texts are identical after "
                     "preprocessing");
    }
    texts.push_back(e.vulnerable_text);
    texts.push_back(e.fixed_text);
    entries.push_back(std::move(e));
  }
  auto vecs = embed_batch(cfg.embed, texts);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    entries[i].vulnerable_vec = std::move(vecs[2 * i].values);
    entries[i].fixed_vec = std::move(vecs[2 * i + 1].values);
  }
  return entries;
}

Json candidate_to_json(const CandidateClone& c) {
  Json j = Json::object();
  j["entry_id"] = c.entry_id;
  j["target_id"] = c.target_id;
  j["sim_vuln"] = c.sim_vuln;
  j["sim_fixed"] = c.sim_fixed;
  j["kept"] = c.kept;
  j["rank_score"] = c.rank_score;
  return j;
}

CandidateClone candidate_from_json(const Json& j) {
  CandidateClone c;
  c.entry_id = j.at("entry_id").get<std::string>();
  c.target_id = j.at("target_id").get<std::string>();
  c.sim_vuln = j.at("sim_vuln").get<double>();
  c.sim_fixed = j.at("sim_fixed").get<double>();
  c.kept = j.at("kept").get<bool>();
  c.rank_score = j.at("rank_score").get<double>();
  return c;
}

struct VerdictRow {
  std::string entry_id;
  std::string target_id;
  ValidationVerdict verdict;
};

Json verdict_to_json(const VerdictRow& r) {
  Json j = Json::object();
  j["entry_id"] = r.entry_id;
  j["target_id"] = r.target_id;
  j["is_vulnerable"] = r.verdict.is_vulnerable;
  j["confidence_level"] = r.verdict.confidence_level;
  j["justification"] = r.verdict.justification;
  j["parse_status"] = parse_status_name(r.verdict.parse_status);
  j["raw_response"] = r.verdict.raw_response;
  return j;
}

VerdictRow verdict_from_json(const Json& j) {
  VerdictRow r;
  r.entry_id = j.at("entry_id").get<std::string>();
  r.target_id = j.at("target_id").get<std::string>();
  r.verdict.is_vulnerable = j.at("is_vulnerable").get<bool>();
  r.verdict.confidence_level = j.at("confidence_level").get<int>();
  r.verdict.justification = j.at("justification").get<std::string>();
  ParseStatus st;
  if (!parse_status_from_name(j.at("parse_status").get<std::string>(), st)) {
    throw_contract("verdicts: bad parse_status");
  }
  r.verdict.parse_status = st;
  r.verdict.raw_response = j.value("raw_response", std::string{});
  return r;
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", fraction * 100.0);
  return buf;
}

}  // namespace

int cmd_extract(const PipelineConfig& cfg) {
  return guard("extract", [&] {
    if (!cfg.paths.manifest.empty()) {
      auto manifest = read_manifest(cfg.resolve(cfg.paths.manifest));
      auto kept = filter_manifest(manifest);
      std::cerr << "manifest: " << kept.size() << " of " << manifest.size()
                << " repositories pass the activity filters\n";
    }
    if (cfg.paths.repo_root.empty()) {
      throw_input("extract: paths.repo_root not configured");
    }
    std::string root = cfg.resolve(cfg.paths.repo_root);
    std::string slug = cfg.repo_slug.empty()
                           ? std::filesystem::path(root).filename().string()
                           : cfg.repo_slug;
    auto records = ingest_repository(root, cfg.languages, slug);
    if (records.empty()) {
      std::cerr << "warning: no functions extracted from " << root << "\n";
    }
    std::vector<Json> lines;
    lines.reserve(records.size());
    for (const auto& r : records) lines.push_back(to_json(r));
    write_jsonl(cfg.resolve(cfg.paths.corpus), lines);
    std::cerr << "extract: " << records.size() << " functions -> "
              << cfg.paths.corpus << "\n";
  });
}

int cmd_embed(const PipelineConfig& cfg) {
  return guard("embed", [&] {
    auto corpus = read_corpus(cfg.resolve(cfg.paths.corpus));
    if (corpus.empty()) throw_input("embed: corpus is empty");
    std::vector<std::string> texts;
    std::vector<std::string> ids;
    texts.reserve(corpus.size());
    for (const auto& r : corpus) {
      texts.push_back(preprocess(r.text, r.language));
      ids.push_back(r.id);
    }
    auto vectors = embed_batch(cfg.embed, texts, ids);
    std::vector<Json> lines;
    lines.reserve(vectors.size());
    for (const auto& v : vectors) {
      Json j = Json::object();
      j["source_id"] = v.source_id;
      j["dim"] = static_cast<int>(v.values.size());
      Json values = Json::array();
      for (Eigen::Index k = 0; k < v.values.size(); ++k) {
        values.push_back(v.values[k]);
      }
      j["values"] = std::move(values);
      lines.push_back(std::move(j));
    }
    write_jsonl(cfg.resolve(cfg.paths.embeddings), lines);
    std::cerr << "embed: " << lines.size() << " vectors -> "
              << cfg.paths.embeddings << "\n";
  });
}

int cmd_detect(const PipelineConfig& cfg) {
  return guard("detect", [&] {
    auto pairs = read_pairs(cfg.resolve(cfg.paths.pairs));
    if (pairs.empty()) throw_input("detect: pairs file is empty");
    auto store = load_embedding_store(cfg.resolve(cfg.paths.embeddings));
    VectorIndex index = VectorIndex::build(std::move(store));
    auto entries = build_entries(cfg, pairs);
    auto candidates = retrieve_candidates(entries, index, cfg.detect);
    candidates = filter_against_fixed(std::move(candidates));
    std::vector<Json> lines;
    lines.reserve(candidates.size());
    std::size_t kept = 0;
    for (const auto& c : candidates) {
      kept += c.kept ? 1 : 0;
      lines.push_back(candidate_to_json(c));
    }
    write_jsonl(cfg.resolve(cfg.paths.candidates), lines);
    std::cerr << "detect: " << candidates.size() << " candidates (" << kept
              << " kept) at t=" << cfg.detect.threshold_t << " -> "
              << cfg.paths.candidates << "\n";
  });
}

int cmd_validate(const PipelineConfig& cfg) {
  return guard("validate", [&] {
    auto pairs = read_pairs(cfg.resolve(cfg.paths.pairs));
    auto corpus = read_corpus(cfg.resolve(cfg.paths.corpus));
    std::vector<CandidateClone> candidates;
    for (const Json& j : read_jsonl(cfg.resolve(cfg.paths.candidates))) {
      candidates.push_back(candidate_from_json(j));
    }

    std::unordered_map<std::string, const FunctionPair*> pair_by_entry;
    for (const auto& p : pairs) pair_by_entry[p.vulnerable.id] = &p;
    std::unordered_map<std::string, const FunctionRecord*> target_by_id;
    for (const auto& r : corpus) target_by_id[r.id] = &r;

    LlmProviderConfig llm = cfg.llm;
    llm.fixture_path = cfg.resolve(llm.fixture_path);
    auto provider = make_llm_provider(llm);

    std::vector<const CandidateClone*> work;
    for (const auto& c : candidates) {
      if (c.kept) work.push_back(&c);
    }

    std::vector<VerdictRow> rows(work.size());
    std::vector<std::string> misses;
    std::mutex miss_mutex;
    std::atomic<std::size_t> next{0};
    auto run_one = [&](std::size_t i) {
      const CandidateClone& c = *work[i];
      auto pit = pair_by_entry.find(c.entry_id);
      auto tit = target_by_id.find(c.target_id);
      if (pit == pair_by_entry.end()) {
        throw_contract("validate: candidate references unknown entry " +
                       c.entry_id);
      }
      if (tit == target_by_id.end()) {
        throw_contract("validate: candidate references unknown target " +
                       c.target_id);
      }
      ValidationRequest req;
      req.original_function = pit->second->vulnerable.text;
      req.fixed_function = pit->second->fixed.text;
      req.cloned_function = tit->second->text;
      req.entry_id = c.entry_id;
      req.target_id = c.target_id;
      rows[i] = {c.entry_id, c.target_id,
                 validate_candidate(*provider, llm, req, llm.runs)};
    };
    auto worker = [&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= work.size()) return;
        try {
          run_one(i);
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::FixtureMiss) {
            std::lock_guard<std::mutex> lock(miss_mutex);
            misses.push_back(e.what());
          } else {
            throw;
          }
        }
      }
    };
    int cap = std::max(1, llm.max_inflight);
    std::size_t nthreads =
        std::min<std::size_t>(work.size(), static_cast<std::size_t>(cap));
    if (nthreads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (std::size_t k = 0; k < nthreads; ++k) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    if (!misses.empty()) {
      std::sort(misses.begin(), misses.end());
      for (const auto& m : misses) std::cerr << m << "\n";
      throw_fixture_miss(std::to_string(misses.size()) +
                         " fixture misses (digests listed above)");
    }

    std::vector<Json> lines;
    lines.reserve(rows.size());
    for (const auto& r : rows) lines.push_back(verdict_to_json(r));
    write_jsonl(cfg.resolve(cfg.paths.verdicts), lines);
    std::cerr << "validate: " << rows.size() << " verdicts -> "
              << cfg.paths.verdicts << "\n";
  });
}

namespace {

std::vector<std::pair<RankedList, EvalQuery>> join_truth(
    const std::vector<RankedList>& ranked,
    const std::vector<EvalQuery>& truth) {
  std::unordered_map<std::string, const RankedList*> by_query;
  for (const auto& r : ranked) by_query[r.query_id] = &r;
  std::vector<std::pair<RankedList, EvalQuery>> out;
  for (const auto& q : truth) {
    auto it = by_query.find(q.query_id);
    RankedList rl;
    rl.query_id = q.query_id;
    if (it != by_query.end()) rl = *it->second;
    out.emplace_back(std::move(rl), q);
  }
  return out;
}

}  // namespace

int cmd_evaluate(const PipelineConfig& cfg, const std::string& truth_path) {
  return guard("evaluate", [&] {
    std::string truth_file =
        truth_path.empty() ? cfg.paths.truth : truth_path;
    if (truth_file.empty()) throw_input("evaluate: no truth file configured");

    std::vector<EvalQuery> truth;
    for (const Json& j : read_jsonl(cfg.resolve(truth_file))) {
      EvalQuery q;
      q.query_id = j.at("query_id").get<std::string>();
      for (const auto& id : j.at("ground_truth")) {
        q.ground_truth.insert(id.get<std::string>());
      }
      if (q.ground_truth.empty()) {
        throw_input("evaluate: empty ground truth for " + q.query_id);
      }
      truth.push_back(std::move(q));
    }
    if (truth.empty()) throw_input("evaluate: truth file is empty");

    std::vector<CandidateClone> candidates;
    for (const Json& j : read_jsonl(cfg.resolve(cfg.paths.candidates))) {
      candidates.push_back(candidate_from_json(j));
    }
    std::map<std::string, ValidationVerdict> verdicts;
    bool have_verdicts = false;
    std::filesystem::path vp = cfg.resolve(cfg.paths.verdicts);
    if (!cfg.paths.verdicts.empty() && std::filesystem::exists(vp)) {
      for (const Json& j : read_jsonl(vp)) {
        VerdictRow r = verdict_from_json(j);
        verdicts[r.target_id] = r.verdict;
      }
      have_verdicts = true;
    }

    auto ranked =
        rank_candidates(candidates, have_verdicts ? &verdicts : nullptr);
    auto joined = join_truth(ranked, truth);

    MetricReport report;
    const std::vector<int> ks = {1, 3, 5};
    for (int k : ks) {
      double sum = 0.0;
      for (const auto& [rl, q] : joined) sum += precision_at_k(rl, q, k);
      report.p_at[k] = sum / static_cast<double>(joined.size());
    }
    for (const auto& [rl, q] : joined) {
      report.per_query_ap[q.query_id] = average_precision(rl, q);
    }
    report.map = mean_average_precision(joined);

    std::uint64_t tp = 0, fp = 0, fn = 0;
    for (const auto& [rl, q] : joined) {
      std::set<std::string> pred(rl.results.begin(), rl.results.end());
      for (const auto& id : pred) {
        if (q.ground_truth.count(id)) {
          ++tp;
        } else {
          ++fp;
        }
      }
      for (const auto& id : q.ground_truth) {
        if (!pred.count(id)) ++fn;
      }
    }
    report.classification = classification_metrics(tp, fp, fn);

    Json out = Json::object();
    out["config_fingerprint"] = cfg.config_fingerprint;
    out["seed"] = cfg.seed;
    out["queries"] = joined.size();
    Json pat = Json::object();
    for (int k : ks) pat["P@" + std::to_string(k)] = report.p_at[k];
    out["precision_at_k"] = std::move(pat);
    out["MAP"] = report.map;
    Json per_query = Json::object();
    for (const auto& [qid, ap] : report.per_query_ap) per_query[qid] = ap;
    out["per_query_AP"] = std::move(per_query);
    Json cls = Json::object();
    cls["tp"] = report.classification.tp;
    cls["fp"] = report.classification.fp;
    cls["fn"] = report.classification.fn;
    cls["precision"] = report.classification.precision;
    cls["recall"] = report.classification.recall;
    cls["f1"] = report.classification.f1;
    out["classification"] = std::move(cls);
    write_text_atomic(cfg.resolve(cfg.paths.metrics_json),
                      out.dump(2) + "\n");

    std::ostringstream md;
    md << "# Evaluation\n\n";
    md << "| Model | P@1 | P@3 | P@5 | MAP |\n";
    md << "|-------|-----|-----|-----|-----|\n";
    md << "| this run | " << percent(report.p_at[1]) << " | "
       << percent(report.p_at[3]) << " | " << percent(report.p_at[5]) << " | "
       << percent(report.map) << " |\n\n";
    md << "| Model | TP | FP | FN | Precision | Recall | F1 |\n";
    md << "|-------|----|----|----|-----------|--------|----|\n";
    md << "| this run | " << tp << " | " << fp << " | " << fn << " | "
       << percent(report.classification.precision) << " | "
       << percent(report.classification.recall) << " | "
       << percent(report.classification.f1) << " |\n";
    write_text_atomic(cfg.resolve(cfg.paths.metrics_md), md.str());

    std::cerr << "evaluate: MAP=" << percent(report.map) << "% over "
              << joined.size() << " queries -> " << cfg.paths.metrics_json
              << "\n";
  });
}

int cmd_bench_gen(const PipelineConfig& cfg, const std::string& pairs_path) {
  return guard("bench-gen", [&] {
    std::string pairs_file =
        pairs_path.empty() ? cfg.paths.pairs : pairs_path;
    auto pool = read_pairs(cfg.resolve(pairs_file));
    if (pool.empty()) throw_input("bench-gen: pairs file is empty");

    auto sampled = cwe_sample(pool, cfg.bench, cfg.seed);

    LlmProviderConfig gen_cfg = cfg.llm;
    if (!cfg.bench_fixture_path.empty()) {
      gen_cfg.kind = LlmKind::Replay;
      gen_cfg.fixture_path = cfg.resolve(cfg.bench_fixture_path);
    } else {
      gen_cfg.fixture_path = cfg.resolve(gen_cfg.fixture_path);
    }
    auto provider = make_llm_provider(gen_cfg);

    std::string fingerprint;
    if (gen_cfg.kind == LlmKind::Replay) {
      std::string bytes;
      read_file(gen_cfg.fixture_path, bytes);
      fingerprint = "replay:" + md5_hex(bytes);
    } else {
      fingerprint = "remote:" + gen_cfg.model_name;
    }

    Benchmark bench = assemble_benchmark(sampled, cfg.bench, *provider,
                                         gen_cfg.kind, cfg.seed);
    write_benchmark_archive(cfg.resolve(cfg.paths.bench_dir), bench,
                            cfg.bench, cfg.seed, fingerprint);
    std::cerr << "bench-gen: " << bench.clones.size() << " clones ("
              << bench.stats.positives << " positive) -> "
              << cfg.paths.bench_dir << "\n";
  });
}

int cmd_report(const PipelineConfig& cfg) {
  return guard("report", [&] {
    auto pairs = read_pairs(cfg.resolve(cfg.paths.pairs));
    auto corpus = read_corpus(cfg.resolve(cfg.paths.corpus));
    std::vector<CandidateClone> candidates;
    for (const Json& j : read_jsonl(cfg.resolve(cfg.paths.candidates))) {
      candidates.push_back(candidate_from_json(j));
    }
    std::map<std::string, ValidationVerdict> verdicts;
    for (const Json& j : read_jsonl(cfg.resolve(cfg.paths.verdicts))) {
      VerdictRow r = verdict_from_json(j);
      verdicts[r.target_id] = r.verdict;
    }

    std::unordered_map<std::string, const FunctionPair*> pair_by_entry;
    for (const auto& p : pairs) pair_by_entry[p.vulnerable.id] = &p;
    std::unordered_map<std::string, const FunctionRecord*> target_by_id;
    for (const auto& r : corpus) target_by_id[r.id] = &r;
    std::unordered_map<std::string, const CandidateClone*> cand_by_target;
    for (const auto& c : candidates) cand_by_target[c.target_id] = &c;

    auto ranked = rank_candidates(candidates, &verdicts);

    Json findings = Json::array();
    std::size_t finding_count = 0;
    for (const auto& rl : ranked) {
      const FunctionPair* pair = nullptr;
      auto pit = pair_by_entry.find(rl.query_id);
      if (pit != pair_by_entry.end()) pair = pit->second;
      for (std::size_t rank = 0; rank < rl.results.size(); ++rank) {
        const std::string& target_id = rl.results[rank];
        const ValidationVerdict& v = verdicts.at(target_id);
        const CandidateClone* c = cand_by_target.at(target_id);
        Json f = Json::object();
        f["entry_id"] = rl.query_id;
        f["cve_id"] = pair ? pair->cve_id : "";
        f["cwe_id"] = pair ? pair->cwe_id : "";
        f["rank"] = rank + 1;
        auto tit = target_by_id.find(target_id);
        if (tit != target_by_id.end()) {
          const FunctionRecord* t = tit->second;
          f["target"] = Json::object({{"id", t->id},
                                      {"repo", t->repo},
                                      {"path", t->path},
                                      {"name", t->name},
                                      {"start_line", t->start_line},
                                      {"end_line", t->end_line}});
        } else {
          f["target"] = Json::object({{"id", target_id}});
        }
        f["sim_vuln"] = c->sim_vuln;
        f["sim_fixed"] = c->sim_fixed;
        f["confidence_level"] = v.confidence_level;
        f["justification"] = v.justification;
        f["parse_status"] = parse_status_name(v.parse_status);
        findings.push_back(std::move(f));
        ++finding_count;
      }
    }

    std::size_t kept = 0;
    for (const auto& c : candidates) kept += c.kept ? 1 : 0;

    Json out = Json::object();
    out["config_fingerprint"] = cfg.config_fingerprint;
    out["seed"] = cfg.seed;
    Json summary = Json::object();
    summary["entries"] = pairs.size();
    summary["targets"] = corpus.size();
    summary["candidates"] = candidates.size();
    summary["kept"] = kept;
    summary["validated"] = verdicts.size();
    summary["findings"] = finding_count;
    out["summary"] = std::move(summary);
    out["findings"] = std::move(findings);
    std::filesystem::path mp = cfg.resolve(cfg.paths.metrics_json);
    if (!cfg.paths.metrics_json.empty() && std::filesystem::exists(mp)) {
      std::string raw;
      if (read_file(mp.string(), raw)) {
        Json metrics = Json::parse(raw, nullptr, false);
        if (!metrics.is_discarded()) out["metrics"] = std::move(metrics);
      }
    }
    write_text_atomic(cfg.resolve(cfg.paths.report_json),
                      out.dump(2) + "\n");

    std::ostringstream md;
    md << "# Vulnerable clone findings\n\n";
    md << "Candidates: " << candidates.size() << ", kept: " << kept
       << ", validated vulnerable: " << finding_count << "\n\n";
    if (finding_count > 0) {
      md << "| # | CVE | Target | Lines | sim(vuln) | sim(fixed) | "
            "Confidence | Justification |\n";
      md << "|---|-----|--------|-------|-----------|------------|"
            "------------|---------------|\n";
      std::size_t row = 0;
      for (const auto& f : out["findings"]) {
        std::string where =
            f["target"].contains("path")
                ? f["target"]["repo"].get<std::string>() + "/" +
                      f["target"]["path"].get<std::string>()
                : f["target"]["id"].get<std::string>();
        std::string lines;
        if (f["target"].contains("start_line")) {
          lines = std::to_string(f["target"]["start_line"].get<int>()) + "-" +
                  std::to_string(f["target"]["end_line"].get<int>());
        }
        std::string just = f["justification"].get<std::string>();
        std::replace(just.begin(), just.end(), '\n', ' ');
        std::replace(just.begin(), just.end(), '|', '/');
        if (just.size() > 160) just = just.substr(0, 157) + "...";
        md << "| " << ++row << " | " << f["cve_id"].get<std::string>()
           << " | " << where << " | " << lines << " | "
           << f["sim_vuln"].get<double>() << " | "
           << f["sim_fixed"].get<double>() << " | "
           << f["confidence_level"].get<int>() << " | " << just << " |\n";
      }
    } else {
      md << "No validated findings.\n";
    }
    write_text_atomic(cfg.resolve(cfg.paths.report_md), md.str());
    std::cerr << "report: " << finding_count << " findings -> "
              << cfg.paths.report_json << "\n";
  });
}

int run_cli(int argc, char** argv) {
  CLI::App app{"function-level vulnerable code clone detection toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  double threshold = -1.0;
  int runs = 0;
  std::int64_t seed = -1;
  std::string truth_path;
  std::string pairs_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "pipeline config file (JSON)")
        ->required();
    sub->add_option("--threshold", threshold,
                    "override detect.threshold from the config");
    sub->add_option("--runs", runs, "override llm.runs from the config");
    sub->add_option("--seed", seed, "override seed from the config");
  };

  CLI::App* c_extract = app.add_subcommand("extract", "parse functions");
  CLI::App* c_embed = app.add_subcommand("embed", "embed the corpus");
  CLI::App* c_detect = app.add_subcommand("detect", "retrieve candidates");
  CLI::App* c_validate = app.add_subcommand("validate", "LLM validation");
  CLI::App* c_evaluate = app.add_subcommand("evaluate", "ranking metrics");
  CLI::App* c_bench = app.add_subcommand("bench-gen", "generate benchmark");
  CLI::App* c_report = app.add_subcommand("report", "assemble findings");
  for (CLI::App* sub : {c_extract, c_embed, c_detect, c_validate, c_evaluate,
                        c_bench, c_report}) {
    add_common(sub);
  }
  c_evaluate->add_option("--truth", truth_path, "ground-truth JSONL");
  c_bench->add_option("--pairs", pairs_path, "pairs JSONL to sample from");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  PipelineConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.exit_code();
  }
  if (threshold >= 0.0) cfg.detect.threshold_t = threshold;
  if (runs > 0) cfg.llm.runs = runs;
  if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);

  if (c_extract->parsed()) return cmd_extract(cfg);
  if (c_embed->parsed()) return cmd_embed(cfg);
  if (c_detect->parsed()) return cmd_detect(cfg);
  if (c_validate->parsed()) return cmd_validate(cfg);
  if (c_evaluate->parsed()) return cmd_evaluate(cfg, truth_path);
  if (c_bench->parsed()) return cmd_bench_gen(cfg, pairs_path);
  if (c_report->parsed()) return cmd_report(cfg);
  return 1;
}

}  // namespace vcc
