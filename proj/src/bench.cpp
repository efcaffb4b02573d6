#include "vcc/bench.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <unordered_map>

#include "vcc/digest.hpp"
#include "vcc/error.hpp"
#include "vcc/jsonl.hpp"
#include "vcc/rng.hpp"
#include "vcc/text.hpp"

namespace vcc {

const char* clone_type_name(CloneType t) {
  switch (t) {
    case CloneType::T1: return "T1";
    case CloneType::T2: return "T2";
    case CloneType::T3: return "T3";
    case CloneType::T4: return "T4";
  }
  return "?";
}

bool clone_type_from_name(std::string_view name, CloneType& out) {
  if (name == "T1") out = CloneType::T1;
  else if (name == "T2") out = CloneType::T2;
  else if (name == "T3") out = CloneType::T3;
  else if (name == "T4") out = CloneType::T4;
  else return false;
  return true;
}

const char* origin_side_name(OriginSide s) {
  return s == OriginSide::Vulnerable ? "VULNERABLE" : "FIXED";
}

std::vector<std::string> default_cwe_priority() {
  return {"CWE-79", "CWE-787", "CWE-22", "CWE-125", "CWE-78", "CWE-416",
          "CWE-94", "CWE-20", "CWE-862", "CWE-77", "CWE-89", "CWE-287"};
}

// ---------------- cwe_sample ----------------

std::vector<FunctionPair> cwe_sample(const std::vector<FunctionPair>& pool,
                                     const BenchPlan& plan,
                                     std::uint64_t seed) {
  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const std::string& cwe = pool[i].cwe_id;
    if (cwe.empty()) throw_contract("cwe_sample: pair without cwe_id");
    auto [it, fresh] = groups.try_emplace(cwe);
    if (fresh) order.push_back(cwe);
    it->second.push_back(i);
  }
  // priority CWEs first, then pool first-appearance order
  std::vector<std::string> priority =
      plan.cwe_priority.empty() ? default_cwe_priority() : plan.cwe_priority;
  std::vector<std::string> final_order;
  for (const auto& cwe : priority) {
    if (groups.count(cwe)) final_order.push_back(cwe);
  }
  for (const auto& cwe : order) {
    if (std::find(final_order.begin(), final_order.end(), cwe) ==
        final_order.end()) {
      final_order.push_back(cwe);
    }
  }

  std::vector<FunctionPair> out;
  std::size_t target = static_cast<std::size_t>(plan.target_pairs);
  for (const auto& cwe : final_order) {
    if (out.size() >= target) break;
    const auto& members = groups[cwe];
    std::size_t need = std::min<std::size_t>(
        {members.size(), static_cast<std::size_t>(plan.pairs_per_cwe_cap),
         target - out.size()});
    // selection sampling: order-preserving, fixed draw sequence
    Rng rng(Rng::derive(seed, fnv1a64(cwe)));
    std::size_t chosen = 0;
    for (std::size_t i = 0; i < members.size() && chosen < need; ++i) {
      std::size_t remaining = members.size() - i;
      if (rng.below(remaining) < need - chosen) {
        out.push_back(pool[members[i]]);
        ++chosen;
      }
    }
  }
  if (out.size() < target) {
    std::cerr << "warning: pool provides only " << out.size() << " of "
              << target << " requested pairs\n";
  }
  return out;
}

// ---------------- gen_type1 ----------------

namespace {

const std::vector<std::string> kCommentWords = {
    "note",  "check",   "bounds",  "cache",  "state",  "update", "legacy",
    "index", "buffer",  "cleanup", "review", "handle", "offset", "length",
    "init",  "pointer", "result",  "tmp",    "flags",  "parse"};

std::string comment_phrase(Rng& rng) {
  std::string s = rng.pick(kCommentWords);
  std::size_t extra = rng.below(3);
  for (std::size_t i = 0; i < extra; ++i) {
    s += " " + rng.pick(kCommentWords);
  }
  return s;
}

std::size_t newline_count(std::string_view s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

std::string gen_type1(const std::string& text, Language language,
                      std::uint64_t seed) {
  std::string sanitized = utf8_sanitize(text);
  if (parse_functions(sanitized, language).empty()) {
    throw_contract("gen_type1: input does not parse as a function");
  }
  TokenStream ts = tokenize(sanitized, language, /*keep_comments=*/true);
  if (ts.tokens.empty()) throw_contract("gen_type1: empty input");

  Rng rng(seed);
  const std::vector<std::string> units = {"  ", "    ", "\t"};
  std::string indent_unit = rng.pick(units);
  bool crlf = rng.chance(0.5);
  std::string eol = crlf ? "\r\n" : "\n";
  int blank_policy = static_cast<int>(rng.below(3));  // 0 keep, 1 drop, 2 one
  double line_comment_p = 0.25;
  double blank_insert_p = 0.15;
  bool top_block_comment = rng.chance(0.5);
  bool inserted_any_comment = false;

  std::string out;
  out.reserve(sanitized.size() + 128);
  if (top_block_comment) {
    out += "/* " + comment_phrase(rng) + " */" + eol;
    inserted_any_comment = true;
  }

  int depth = 0;
  std::uint32_t cur_line = ts.tokens.front().line;
  bool line_open = false;  // tokens already emitted on the current line

  auto maybe_line_comment = [&](std::string_view last_text, bool preproc) {
    if (preproc) return;
    if (last_text != ";" && last_text != "}" && last_text != "{") return;
    if (!rng.chance(line_comment_p)) return;
    out += " // " + comment_phrase(rng);
    inserted_any_comment = true;
  };

  auto indent_for = [&](std::size_t first_tok) {
    const Token& t = ts.tokens[first_tok];
    if (t.preproc) return std::string{};
    int d = depth;
    std::string_view s = ts.text(first_tok);
    if (s == "}" || s == ")" || s == "]") d -= 1;
    if (d < 0) d = 0;
    std::string ind;
    for (int k = 0; k < d; ++k) ind += indent_unit;
    return ind;
  };

  for (std::size_t i = 0; i < ts.tokens.size(); ++i) {
    const Token& t = ts.tokens[i];
    std::string_view s = ts.text(i);
    if (t.line > cur_line) {
      if (line_open && i > 0) {
        maybe_line_comment(ts.text(i - 1), ts.tokens[i - 1].preproc);
      }
      std::uint32_t gap = t.line - cur_line;
      out += eol;
      std::uint32_t blanks = gap - 1;
      if (blank_policy == 1) blanks = 0;
      if (blank_policy == 2) blanks = std::min<std::uint32_t>(blanks, 1);
      for (std::uint32_t b = 0; b < blanks; ++b) out += eol;
      if (blanks == 0 && rng.chance(blank_insert_p)) out += eol;
      cur_line = t.line;
      line_open = false;
    }
    if (!line_open) {
      out += indent_for(i);
    } else if (!t.glued) {
      out += ' ';
    }
    out.append(s);
    line_open = true;
    cur_line = t.line + static_cast<std::uint32_t>(newline_count(s));
    if (s == "{" || s == "(" || s == "[") ++depth;
    if (s == "}" || s == ")" || s == "]") --depth;
  }
  if (!ts.tokens.empty()) {
    maybe_line_comment(ts.text(ts.tokens.size() - 1),
                       ts.tokens.back().preproc);
  }
  out += eol;

  if (!inserted_any_comment) {
    out = "/* " + comment_phrase(rng) + " */" + eol + out;
  }
  return out;
}

// ---------------- token_diff ----------------

namespace {

std::vector<std::string> diff_tokens(const std::string& text, Language lang) {
  std::string sanitized = utf8_sanitize(text);
  TokenStream ts = tokenize(sanitized, lang, /*keep_comments=*/true);
  std::vector<std::string> out;
  out.reserve(ts.tokens.size());
  for (std::size_t i = 0; i < ts.tokens.size(); ++i) {
    std::string_view s = ts.text(i);
    if (ts.tokens[i].kind == TokenKind::Comment) {
      // comments contribute their whitespace-separated words
      std::size_t p = 0;
      while (p < s.size()) {
        while (p < s.size() &&
               std::isspace(static_cast<unsigned char>(s[p]))) {
          ++p;
        }
        std::size_t q = p;
        while (q < s.size() &&
               !std::isspace(static_cast<unsigned char>(s[q]))) {
          ++q;
        }
        if (q > p) out.emplace_back(s.substr(p, q - p));
        p = q;
      }
    } else {
      out.emplace_back(s);
    }
  }
  return out;
}

}  // namespace

std::uint64_t token_diff(const std::string& a, const std::string& b,
                         Language language) {
  std::vector<std::string> ta = diff_tokens(a, language);
  std::vector<std::string> tb = diff_tokens(b, language);
  // two-row Levenshtein
  std::size_t n = ta.size(), m = tb.size();
  if (n == 0) return m;
  if (m == 0) return n;
  std::vector<std::uint64_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      std::uint64_t sub = prev[j - 1] + (ta[i - 1] == tb[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

// ---------------- LLM clone generation ----------------

const char* const kClonePromptVersion = "v1";

std::string clone_prompt_template(CloneType t) {
  switch (t) {
    case CloneType::T2:
      return "Rewrite the function below as a Type-2 clone: rename "
             "identifiers (parameters, local variables, helper function "
             "names) and substitute literal values without changing their "
             "types. Keep structure, control flow, behavior, and the "
             "function's security properties exactly as they are.";
    case CloneType::T3:
      return "Rewrite the function below as a Type-3 clone: reorder "
             "independent statements and insert or delete a small number of "
             "statements, while preserving the function's behavior and its "
             "security properties.";
    case CloneType::T4:
      return "Rewrite the function below as a Type-4 clone: produce a "
             "semantically equivalent implementation with different syntax "
             "and structure. Preserve the function's behavior and its "
             "security properties.";
    case CloneType::T1:
      break;
  }
  throw_contract("clone_prompt_template: T1 is generated locally");
}

std::string render_clone_prompt(const std::string& text, Language language,
                                CloneType clone_type, std::uint64_t seed) {
  std::string out;
  out += "[syvc-clone-gen ";
  out += kClonePromptVersion;
  out += "]\n";
  out += clone_prompt_template(clone_type);
  out += "\nLanguage: ";
  out += language_name(language);
  out += "\nVariant: ";
  out += std::to_string(seed);
  out += "\nReturn ONLY the rewritten function in a fenced code block.\n\n";
  out += "```\n";
  out += text;
  if (text.empty() || text.back() != '\n') out += '\n';
  out += "```\n";
  return out;
}

namespace {

std::string extract_code_block(const std::string& response) {
  std::size_t open = response.find("```");
  if (open == std::string::npos) {
    // no fence: take the whole response
    return response;
  }
  std::size_t content = response.find('\n', open);
  if (content == std::string::npos) return response;
  ++content;  // drop the fence line (and any language tag on it)
  std::size_t close = response.find("```", content);
  if (close == std::string::npos) return response.substr(content);
  return response.substr(content, close - content);
}

}  // namespace

std::string gen_llm_clone(const LlmProvider& provider, LlmKind kind,
                          const std::string& text, Language language,
                          CloneType clone_type, std::uint64_t seed) {
  if (clone_type == CloneType::T1) {
    throw_contract("gen_llm_clone: T1 is generated locally");
  }
  int attempts = kind == LlmKind::Replay ? 1 : 3;
  std::string last_error;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    // REMOTE retries perturb the variant so the provider sees a fresh prompt
    std::uint64_t variant =
        attempt == 0 ? seed : Rng::derive(seed, 1000 + attempt);
    std::string prompt =
        render_clone_prompt(text, language, clone_type, variant);
    std::string clone = extract_code_block(provider.complete(prompt));
    if (!parse_functions(clone, language).empty()) return clone;
    last_error = "clone does not parse";
  }
  throw_contract("gen_llm_clone: " + last_error);
}

// ---------------- assembly ----------------

Benchmark assemble_benchmark(const std::vector<FunctionPair>& pairs,
                             const BenchPlan& plan,
                             const LlmProvider& provider, LlmKind kind,
                             std::uint64_t seed) {
  Benchmark bench;
  bench.pairs = pairs;

  std::uint64_t diff_sums[4] = {0, 0, 0, 0};

  auto emit = [&](const FunctionPair& pair, OriginSide side, CloneType type,
                  int copy, const std::string& clone_text,
                  Language lang) {
    const FunctionRecord& origin =
        side == OriginSide::Vulnerable ? pair.vulnerable : pair.fixed;
    CloneRecord rec;
    rec.origin_pair_id = pair.cve_id;
    rec.origin_side = side;
    rec.clone_type = type;
    rec.text = clone_text;
    rec.label = side == OriginSide::Vulnerable;
    rec.token_diff = token_diff(origin.text, clone_text, lang);
    rec.clone_id = pair.cve_id + ":" +
                   (side == OriginSide::Vulnerable ? "V" : "F") + ":" +
                   clone_type_name(type) + ":" + std::to_string(copy);
    auto& st = bench.stats.per_type[static_cast<int>(type)];
    st.clones += 1;
    if (rec.label) {
      st.positives += 1;
    } else {
      st.negatives += 1;
    }
    diff_sums[static_cast<int>(type)] += rec.token_diff;
    bench.clones.push_back(std::move(rec));
  };

  for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
    const FunctionPair& pair = pairs[pi];
    for (OriginSide side : {OriginSide::Vulnerable, OriginSide::Fixed}) {
      const FunctionRecord& origin =
          side == OriginSide::Vulnerable ? pair.vulnerable : pair.fixed;
      Language lang = origin.language;
      std::uint64_t side_salt =
          fnv1a64(pair.cve_id) ^ (side == OriginSide::Vulnerable ? 0x1 : 0x2);

      for (int c = 0; c < plan.clones_per_function.t1; ++c) {
        std::uint64_t s = Rng::derive(seed, side_salt ^ (0x10 + c));
        emit(pair, side, CloneType::T1, c,
             gen_type1(origin.text, lang, s), lang);
      }
      for (int c = 0; c < plan.clones_per_function.t2; ++c) {
        std::uint64_t s = Rng::derive(seed, side_salt ^ (0x20 + c));
        emit(pair, side, CloneType::T2, c,
             gen_llm_clone(provider, kind, origin.text, lang, CloneType::T2,
                           s),
             lang);
      }
      std::vector<std::string> t3_clones;
      for (int c = 0; c < plan.clones_per_function.t3; ++c) {
        std::uint64_t s = Rng::derive(seed, side_salt ^ (0x30 + c));
        std::string clone = gen_llm_clone(provider, kind, origin.text, lang,
                                          CloneType::T3, s);
        for (const auto& prior : t3_clones) {
          if (token_diff(prior, clone, lang) == 0) {
            throw_contract("assemble_benchmark: duplicate T3 clones for " +
                           pair.cve_id);
          }
        }
        t3_clones.push_back(clone);
        emit(pair, side, CloneType::T3, c, clone, lang);
      }
      for (int c = 0; c < plan.clones_per_function.t4; ++c) {
        std::uint64_t s = Rng::derive(seed, side_salt ^ (0x40 + c));
        emit(pair, side, CloneType::T4, c,
             gen_llm_clone(provider, kind, origin.text, lang, CloneType::T4,
                           s),
             lang);
      }
    }
  }

  for (int t = 0; t < 4; ++t) {
    auto& st = bench.stats.per_type[t];
    st.mean_token_diff =
        st.clones ? static_cast<double>(diff_sums[t]) /
                        static_cast<double>(st.clones)
                  : 0.0;
    bench.stats.total += st.clones;
    bench.stats.positives += st.positives;
    bench.stats.negatives += st.negatives;
  }
  return bench;
}

void write_benchmark_archive(const std::filesystem::path& dir,
                             const Benchmark& bench, const BenchPlan& plan,
                             std::uint64_t seed,
                             const std::string& provider_fingerprint) {
  std::filesystem::create_directories(dir / "prompts");

  std::vector<Json> clone_lines;
  for (const auto& c : bench.clones) {
    Json j = Json::object();
    j["clone_id"] = c.clone_id;
    j["origin_pair_id"] = c.origin_pair_id;
    j["origin_side"] = origin_side_name(c.origin_side);
    j["clone_type"] = clone_type_name(c.clone_type);
    j["text"] = c.text;
    j["label"] = c.label;
    j["token_diff"] = c.token_diff;
    clone_lines.push_back(std::move(j));
  }
  write_jsonl(dir / "clones.jsonl", clone_lines);

  std::vector<Json> pair_lines;
  for (const auto& p : bench.pairs) pair_lines.push_back(to_json(p));
  write_jsonl(dir / "pairs.jsonl", pair_lines);

  Json stats = Json::object();
  Json per_type = Json::array();
  for (int t = 0; t < 4; ++t) {
    const auto& st = bench.stats.per_type[t];
    Json row = Json::object();
    row["clone_type"] = clone_type_name(static_cast<CloneType>(t));
    row["clones"] = st.clones;
    row["positives"] = st.positives;
    row["negatives"] = st.negatives;
    row["mean_token_diff"] = st.mean_token_diff;
    per_type.push_back(std::move(row));
  }
  stats["per_type"] = std::move(per_type);
  stats["total"] = bench.stats.total;
  stats["positives"] = bench.stats.positives;
  stats["negatives"] = bench.stats.negatives;
  write_text_atomic(dir / "stats.json", stats.dump(2) + "\n");

  for (CloneType t : {CloneType::T2, CloneType::T3, CloneType::T4}) {
    write_text_atomic(dir / "prompts" /
                          (std::string(clone_type_name(t)) + ".txt"),
                      clone_prompt_template(t) + std::string("\n"));
  }

  Json manifest = Json::object();
  manifest["seed"] = seed;
  Json plan_json = Json::object();
  plan_json["pairs_per_cwe_cap"] = plan.pairs_per_cwe_cap;
  plan_json["target_pairs"] = plan.target_pairs;
  Json cpf = Json::object();
  cpf["T1"] = plan.clones_per_function.t1;
  cpf["T2"] = plan.clones_per_function.t2;
  cpf["T3"] = plan.clones_per_function.t3;
  cpf["T4"] = plan.clones_per_function.t4;
  plan_json["clones_per_function"] = std::move(cpf);
  manifest["plan"] = std::move(plan_json);
  manifest["prompt_version"] = kClonePromptVersion;
  manifest["provider_fingerprint"] = provider_fingerprint;
  write_text_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace vcc
