#include "vcc/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <mutex>
#include <thread>

#include "vcc/digest.hpp"
#include "vcc/error.hpp"
#include "vcc/text.hpp"

namespace vcc {

namespace {

// Index just past the token matching the bracket at i. Brackets of all three
// kinds nest; mismatched input stops at end.
std::size_t skip_balanced(const TokenStream& ts, std::size_t i) {
  int depth = 0;
  for (; i < ts.tokens.size(); ++i) {
    if (ts.tokens[i].kind != TokenKind::Punct) continue;
    std::string_view t = ts.text(i);
    if (t == "(" || t == "[" || t == "{") {
      ++depth;
    } else if (t == ")" || t == "]" || t == "}") {
      --depth;
      if (depth == 0) return i + 1;
    }
  }
  return ts.tokens.size();
}

// Matches template argument brackets backwards: tokens[i] == ">", returns the
// index of the matching "<" or npos.
std::size_t match_angle_back(const TokenStream& ts, std::size_t i,
                             std::size_t low) {
  int depth = 0;
  while (true) {
    std::string_view t = ts.text(i);
    if (t == ">" || t == ">>") depth += static_cast<int>(t.size());
    if (t == "<") {
      if (--depth == 0) return i;
    }
    if (i == low || depth < 0) return std::string_view::npos;
    --i;
  }
}

// tokens[i] == "<": index just past the matching ">". Handles ">>" closers
// and nested round/square/curly brackets inside the argument list.
std::size_t skip_angles_forward(const TokenStream& ts, std::size_t i) {
  int depth = 0;
  std::size_t n = ts.tokens.size();
  while (i < n) {
    std::string_view t = ts.text(i);
    if (t == "(" || t == "[" || t == "{") {
      i = skip_balanced(ts, i);
      continue;
    }
    if (t == "<") ++depth;
    if (t == ">") --depth;
    if (t == ">>") depth -= 2;
    if (t == ";") return i;  // malformed; bail at statement end
    ++i;
    if (depth <= 0) return i;
  }
  return n;
}

struct Found {
  std::string name;
  std::size_t decl_begin;  // token index
  std::size_t body_end;    // token index of closing '}'
};

// ---------------- C / C++ scanner ----------------

class CppScanner {
 public:
  CppScanner(const TokenStream& ts, Language lang) : ts_(ts), lang_(lang) {}

  std::vector<Found> run() {
    scan(0, ts_.tokens.size(), /*in_class=*/false);
    return std::move(found_);
  }

 private:
  const TokenStream& ts_;
  Language lang_;
  std::vector<Found> found_;

  std::string_view text(std::size_t i) const { return ts_.text(i); }
  bool is_ident(std::size_t i) const {
    return ts_.tokens[i].kind == TokenKind::Identifier;
  }

  void scan(std::size_t begin, std::size_t end, bool in_class) {
    std::size_t stmt = begin;
    std::size_t i = begin;
    while (i < end) {
      if (ts_.tokens[i].preproc) {
        while (i < end && ts_.tokens[i].preproc) ++i;
        stmt = i;
        continue;
      }
      std::string_view t = text(i);

      if (t == ";") {
        ++i;
        stmt = i;
        continue;
      }
      if (t == "}") {  // stray close; resynchronize
        ++i;
        stmt = i;
        continue;
      }
      if (lang_ == Language::Cpp && t == ":" && i > begin && is_ident(i - 1)) {
        std::string_view p = text(i - 1);
        if (p == "public" || p == "private" || p == "protected") {
          ++i;
          stmt = i;
          continue;
        }
      }
      if (lang_ == Language::Cpp && t == "namespace") {
        std::size_t j = i + 1;
        while (j < end && (is_ident(j) || text(j) == "::")) ++j;
        if (j < end && text(j) == "{") {
          std::size_t close = skip_balanced(ts_, j);
          scan(j + 1, close > 0 ? close - 1 : j + 1, false);
          i = close;
          stmt = i;
          continue;
        }
        i = j;
        continue;
      }
      if (t == "extern" && i + 2 < end &&
          ts_.tokens[i + 1].kind == TokenKind::String && text(i + 2) == "{") {
        std::size_t close = skip_balanced(ts_, i + 2);
        scan(i + 3, close > 0 ? close - 1 : i + 3, in_class);
        i = close;
        stmt = i;
        continue;
      }
      if (t == "class" || t == "struct" || t == "union" || t == "enum") {
        // Type definition with a body, or an elaborated type inside a
        // declaration. Look ahead for '{' before any of ; ( =.
        std::size_t j = i + 1;
        bool body = false;
        while (j < end) {
          std::string_view u = text(j);
          if (u == "{") {
            body = true;
            break;
          }
          if (u == ";" || u == "(" || u == ")" || u == "=" || u == ",") break;
          if (u == "<") {  // base template args: skip forward
            int depth = 0;
            while (j < end) {
              std::string_view v = text(j);
              if (v == "<") ++depth;
              if (v == ">") --depth;
              if (v == ">>") depth -= 2;
              ++j;
              if (depth <= 0) break;
            }
            continue;
          }
          ++j;
        }
        if (body) {
          std::size_t close = skip_balanced(ts_, j);
          if (lang_ == Language::Cpp && t != "enum") {
            scan(j + 1, close > 0 ? close - 1 : j + 1, true);
          }
          i = close;
          stmt = i;  // a declarator list may follow; treated as a fresh stmt
          continue;
        }
        i = j;
        continue;
      }
      if (lang_ == Language::Cpp && t == "template" && i + 1 < end &&
          text(i + 1) == "<") {
        // skip the parameter list so '=' defaults inside it stay opaque
        i = skip_angles_forward(ts_, i + 1);
        continue;
      }
      if (t == "=") {
        // initializer: skip to the terminating ';' at bracket depth 0, so
        // lambda bodies and braced initializers are never scanned.
        int depth = 0;
        while (i < end) {
          std::string_view u = text(i);
          if (u == "(" || u == "[" || u == "{") ++depth;
          if (u == ")" || u == "]" || u == "}") --depth;
          if (u == ";" && depth == 0) break;
          ++i;
        }
        if (i < end) ++i;
        stmt = i;
        continue;
      }
      if (t == "{") {  // unclaimed brace (initializer, unknown construct)
        i = skip_balanced(ts_, i);
        stmt = i;
        continue;
      }
      if (t == "(") {
        Found f;
        if (try_function(i, stmt, end, in_class, f)) {
          found_.push_back(f);
          i = f.body_end + 1;
          stmt = i;
          continue;
        }
        i = skip_balanced(ts_, i);
        continue;
      }
      ++i;
    }
  }

  // Extract the function/operator name ending at token k (inclusive).
  // On success sets name and name_begin (first token of the name itself,
  // after any qualifiers).
  bool extract_name(std::size_t k, std::size_t low, std::string& name,
                    std::size_t& name_begin) {
    // operator()  operator[]
    if (k >= low + 2 && text(k - 2) == "operator" &&
        ((text(k) == ")" && text(k - 1) == "(") ||
         (text(k) == "]" && text(k - 1) == "["))) {
      name_begin = k - 2;
      name = std::string(ts_.source.substr(
          ts_.tokens[name_begin].begin,
          ts_.tokens[k].end - ts_.tokens[name_begin].begin));
      return true;
    }
    // operator followed by symbol or type tokens
    {
      std::size_t j = k;
      std::size_t steps = 0;
      while (j > low && steps < 6 && text(j) != "operator") {
        std::string_view u = text(j);
        if (u == ";" || u == "{" || u == "}" || u == "(") break;
        --j;
        ++steps;
      }
      if (j >= low && text(j) == "operator") {
        name_begin = j;
        name = std::string(
            ts_.source.substr(ts_.tokens[j].begin,
                              ts_.tokens[k].end - ts_.tokens[j].begin));
        return true;
      }
    }
    // template-id: f<...>(
    if (text(k) == ">") {
      std::size_t lt = match_angle_back(ts_, k, low);
      if (lt == std::string_view::npos || lt == low) return false;
      k = lt - 1;
    }
    if (!is_ident(k) || is_keyword(lang_, text(k))) return false;
    name = std::string(text(k));
    name_begin = k;
    if (k > low && text(k - 1) == "~") {
      name = "~" + name;
      name_begin = k - 1;
    }
    return true;
  }

  // Trailing-identifier annotations allowed between ')' and '{'
  // (__attribute__, UPPER_CASE macros).
  static bool annotation_like(std::string_view s) {
    if (s.rfind("__", 0) == 0) return true;
    bool upper = false;
    for (char c : s) {
      if (std::islower(static_cast<unsigned char>(c))) return false;
      if (std::isupper(static_cast<unsigned char>(c))) upper = true;
    }
    return upper;
  }

  bool try_function(std::size_t open, std::size_t stmt, std::size_t end,
                    bool in_class, Found& out) {
    if (open == stmt || open == 0) return false;
    std::string name;
    std::size_t name_begin = 0;
    if (!extract_name(open - 1, stmt, name, name_begin)) return false;
    if (is_control_keyword(lang_, name)) return false;

    // Walk back over qualifiers: A::B<T>::name
    std::size_t qual_begin = name_begin;
    while (qual_begin >= stmt + 2 && text(qual_begin - 1) == "::") {
      std::size_t q = qual_begin - 2;
      if (text(q) == ">") {
        std::size_t lt = match_angle_back(ts_, q, stmt);
        if (lt == std::string_view::npos || lt == stmt) break;
        q = lt - 1;
      }
      if (!is_ident(q)) break;
      qual_begin = q;
    }
    if (qual_begin > stmt) {
      std::string_view before = text(qual_begin - 1);
      if (before == "." || before == "->" || before == ")" || before == "," ||
          before == "(" || before == "return" || before == "=")
        return false;
    } else if (lang_ == Language::C && !in_class) {
      // Name opens the statement. Accept macro-style definitions only.
      if (!annotation_like(name) && name_begin == stmt) {
        // e.g. `foo(...)` with no return type: likely a call or K&R; but a
        // destructor/ctor form cannot occur in C.
        return false;
      }
    }

    std::size_t j = skip_balanced(ts_, open);  // past ')'
    if (j >= end) return false;

    bool saw_try = false;
    while (j < end) {
      std::string_view u = text(j);
      if (u == "{") break;
      if (u == ";" || u == "=" || u == "," || u == ")" || u == "(") return false;
      if (u == "const" || u == "volatile" || u == "&" || u == "&&" ||
          u == "override" || u == "final" || u == "mutable" || u == "...") {
        ++j;
        continue;
      }
      if (u == "noexcept" || u == "throw" || u == "requires" ||
          u == "__attribute__" || u == "alignas") {
        ++j;
        if (j < end && text(j) == "(") j = skip_balanced(ts_, j);
        continue;
      }
      if (u == "try") {
        saw_try = true;
        ++j;
        continue;
      }
      if (u == "[") {  // [[attribute]]
        j = skip_balanced(ts_, j);
        continue;
      }
      if (u == "->") {  // trailing return type
        ++j;
        while (j < end) {
          std::string_view v = text(j);
          if (v == "{" || v == ";" || v == "=") break;
          if (v == "(" || v == "[") {
            j = skip_balanced(ts_, j);
            continue;
          }
          if (v == "<") {
            int depth = 0;
            while (j < end) {
              std::string_view w = text(j);
              if (w == "<") ++depth;
              if (w == ">") --depth;
              if (w == ">>") depth -= 2;
              ++j;
              if (depth <= 0) break;
            }
            continue;
          }
          ++j;
        }
        continue;
      }
      if (u == ":") {  // constructor initializer list: item(..)/item{..}, ...
        ++j;
        while (j < end && text(j) != "{") {
          bool any_name = false;
          while (j < end && (is_ident(j) || text(j) == "::")) {
            ++j;
            any_name = true;
            if (j < end && text(j) == "<") {
              j = skip_angles_forward(ts_, j);
            }
          }
          if (!any_name || j >= end) return false;
          if (text(j) != "(" && text(j) != "{") return false;
          j = skip_balanced(ts_, j);
          if (j < end && text(j) == "...") ++j;
          if (j < end && text(j) == ",") ++j;
          // otherwise the body '{' must follow; loop condition handles it
        }
        continue;
      }
      if (is_ident(j) && annotation_like(text(j))) {
        ++j;
        if (j < end && text(j) == "(") j = skip_balanced(ts_, j);
        continue;
      }
      return false;
    }
    if (j >= end || text(j) != "{") return false;

    std::size_t close = skip_balanced(ts_, j);  // past '}'
    if (close == 0 || close > end) return false;
    std::size_t last = close - 1;
    if (saw_try || (lang_ == Language::Cpp)) {
      // function-try-block: catch clauses belong to the definition
      while (saw_try && close < end && text(close) == "catch") {
        std::size_t c = close + 1;
        if (c < end && text(c) == "(") c = skip_balanced(ts_, c);
        if (c < end && text(c) == "{") c = skip_balanced(ts_, c);
        close = c;
        last = close - 1;
      }
    }
    out.name = name;
    out.decl_begin = stmt;
    out.body_end = last;
    return true;
  }
};

// ---------------- Java scanner ----------------

class JavaScanner {
 public:
  explicit JavaScanner(const TokenStream& ts) : ts_(ts) {}

  std::vector<Found> run() {
    scan();
    return std::move(found_);
  }

 private:
  enum class Ctx { Top, ClassBody, EnumConstants, Block };

  struct Level {
    Ctx ctx;
    std::size_t stmt;       // statement start token at this level
    std::size_t record = std::string_view::npos;  // found_ index to finish
  };

  const TokenStream& ts_;
  std::vector<Found> found_;

  std::string_view text(std::size_t i) const { return ts_.text(i); }
  bool is_ident(std::size_t i) const {
    return ts_.tokens[i].kind == TokenKind::Identifier;
  }

  void scan() {
    std::vector<Level> stack{{Ctx::Top, 0}};
    std::size_t n = ts_.tokens.size();
    // pending context for the next '{'
    Ctx pending = Ctx::Block;
    bool have_pending = false;
    std::size_t pending_record = std::string_view::npos;

    std::size_t i = 0;
    while (i < n) {
      std::string_view t = text(i);
      Level& top = stack.back();

      if (t == ";") {
        if (top.ctx == Ctx::EnumConstants) top.ctx = Ctx::ClassBody;
        ++i;
        top.stmt = i;
        have_pending = false;
        continue;
      }
      if (t == "{") {
        Ctx ctx = have_pending ? pending : Ctx::Block;
        std::size_t rec = have_pending ? pending_record
                                       : std::string_view::npos;
        // enum constant with a class body: CONST { ... } or CONST(args) { ... }
        if (!have_pending && top.ctx == Ctx::EnumConstants) {
          ctx = Ctx::ClassBody;
        }
        have_pending = false;
        stack.push_back({ctx, i + 1, rec});
        ++i;
        continue;
      }
      if (t == "}") {
        if (stack.size() > 1) {
          if (stack.back().record != std::string_view::npos) {
            found_[stack.back().record].body_end = i;
          }
          stack.pop_back();
        }
        ++i;
        stack.back().stmt = i;
        have_pending = false;
        continue;
      }
      if (t == "class" || t == "interface" || t == "enum" || t == "record") {
        // type declaration: the next '{' at this level is a class body
        pending = t == "enum" ? Ctx::EnumConstants : Ctx::ClassBody;
        have_pending = true;
        pending_record = std::string_view::npos;
        ++i;
        continue;
      }
      if (t == "new") {
        // anonymous class: new Type(...) { ... } / new Type<..>() { ... }
        std::size_t j = i + 1;
        while (j < n && (is_ident(j) || text(j) == "." || text(j) == "<" ||
                         text(j) == ">" || text(j) == ",")) {
          ++j;
        }
        if (j < n && text(j) == "(") {
          std::size_t after = skip_balanced(ts_, j);
          if (after < n && text(after) == "{") {
            pending = Ctx::ClassBody;
            have_pending = true;
            pending_record = std::string_view::npos;
          }
          i = after;
          continue;
        }
        i = j;
        continue;
      }
      if (t == "(") {
        if (top.ctx == Ctx::EnumConstants) {
          // constant arguments; a '{' right after opens the constant's body
          i = skip_balanced(ts_, i);
          continue;
        }
        std::size_t m = std::string_view::npos;
        bool class_like = top.ctx == Ctx::ClassBody || top.ctx == Ctx::Top;
        if (class_like && try_method(i, top.stmt, m)) {
          // record created; its '{' comes next and opens a Block
          pending = Ctx::Block;
          have_pending = true;
          pending_record = m;
          i = found_marker_;  // position of the body '{'
          continue;
        }
        i = skip_balanced(ts_, i);
        continue;
      }
      ++i;
    }
  }

  std::size_t found_marker_ = 0;

  bool try_method(std::size_t open, std::size_t stmt,
                  std::size_t& record_idx) {
    if (open == 0 || open <= stmt) return false;
    std::size_t k = open - 1;
    if (!is_ident(k) || is_keyword(Language::Java, text(k))) return false;
    if (k > stmt) {
      std::string_view before = text(k - 1);
      if (before == "." || before == "new" || before == "@" ||
          before == "record" || before == "=") {
        return false;
      }
    }

    std::size_t j = skip_balanced(ts_, open);  // past ')'
    std::size_t nn = ts_.tokens.size();
    // optional throws clause
    if (j < nn && text(j) == "throws") {
      ++j;
      while (j < nn &&
             (is_ident(j) || text(j) == "." || text(j) == ",")) {
        ++j;
      }
    }
    if (j >= nn || text(j) != "{") return false;

    Found f;
    f.name = std::string(text(k));
    f.decl_begin = stmt;
    f.body_end = j;  // patched when the body's '}' pops
    found_.push_back(f);
    record_idx = found_.size() - 1;
    found_marker_ = j;
    return true;
  }
};

FunctionRecord make_record(const TokenStream& ts, std::string_view source,
                           const std::vector<std::size_t>& starts,
                           const Found& f, Language lang,
                           std::string_view repo, std::string_view path) {
  const Token& first = ts.tokens[f.decl_begin];
  const Token& last = ts.tokens[f.body_end];
  std::uint32_t start_line = first.line;
  std::uint32_t end_line = last.line;
  // a multi-byte final token could span lines; count newlines inside it
  for (std::uint32_t b = last.begin; b < last.end; ++b) {
    if (source[b] == '\n') ++end_line;
  }
  FunctionRecord rec;
  rec.repo = std::string(repo);
  rec.path = std::string(path);
  rec.language = lang;
  rec.name = f.name;
  rec.start_line = start_line;
  rec.end_line = end_line;
  rec.text = std::string(line_slice(source, starts, start_line, end_line));
  rec.id = function_record_id(repo, path, start_line, end_line);
  return rec;
}

}  // namespace

std::string function_record_id(std::string_view repo, std::string_view path,
                               std::uint32_t start_line,
                               std::uint32_t end_line) {
  std::string key;
  key.reserve(repo.size() + path.size() + 24);
  key.append(repo);
  key.push_back('\n');
  key.append(path);
  key.push_back('\n');
  key.append(std::to_string(start_line));
  key.push_back('-');
  key.append(std::to_string(end_line));
  return md5_hex(key);
}

std::vector<FunctionRecord> parse_functions(std::string_view file_text,
                                            Language language,
                                            std::string_view repo,
                                            std::string_view path) {
  std::string sanitized = utf8_sanitize(file_text);
  TokenStream ts = tokenize(sanitized, language, /*keep_comments=*/false);

  std::vector<Found> found;
  if (language == Language::Java) {
    found = JavaScanner(ts).run();
  } else {
    found = CppScanner(ts, language).run();
  }
  std::sort(found.begin(), found.end(), [&](const Found& a, const Found& b) {
    return ts.tokens[a.decl_begin].begin < ts.tokens[b.decl_begin].begin;
  });

  auto starts = line_starts(sanitized);
  std::vector<FunctionRecord> records;
  records.reserve(found.size());
  for (const Found& f : found) {
    records.push_back(
        make_record(ts, sanitized, starts, f, language, repo, path));
  }
  return records;
}

bool language_for_extension(const std::filesystem::path& p, Language& out) {
  std::string ext = p.extension().string();
  if (ext == ".c" || ext == ".h") {
    out = Language::C;
    return true;
  }
  if (ext == ".cc" || ext == ".cpp" || ext == ".cxx" || ext == ".hpp") {
    out = Language::Cpp;
    return true;
  }
  if (ext == ".java") {
    out = Language::Java;
    return true;
  }
  return false;
}

std::vector<FunctionRecord> ingest_repository(
    const std::filesystem::path& root, const std::set<Language>& languages,
    std::string_view repo_slug) {
  namespace fs = std::filesystem;
  if (!fs::exists(root)) throw_input("no such directory: " + root.string());

  struct FileTask {
    fs::path abs;
    std::string rel;
    Language lang;
  };
  std::vector<FileTask> files;
  for (auto it = fs::recursive_directory_iterator(
           root, fs::directory_options::skip_permission_denied);
       it != fs::recursive_directory_iterator(); ++it) {
    if (!it->is_regular_file()) continue;
    Language lang;
    if (!language_for_extension(it->path(), lang)) continue;
    if (!languages.empty() && !languages.count(lang)) continue;
    files.push_back(
        {it->path(), fs::relative(it->path(), root).generic_string(), lang});
  }
  std::sort(files.begin(), files.end(),
            [](const FileTask& a, const FileTask& b) { return a.rel < b.rel; });

  std::vector<std::vector<FunctionRecord>> per_file(files.size());
  std::mutex log_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= files.size()) return;
      std::string bytes;
      if (!read_file(files[i].abs.string(), bytes)) {
        std::lock_guard<std::mutex> lock(log_mutex);
        std::cerr << "warning: cannot read " << files[i].abs.string()
                  << ", skipped\n";
        continue;
      }
      per_file[i] =
          parse_functions(bytes, files[i].lang, repo_slug, files[i].rel);
    }
  };
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t nthreads = std::min<std::size_t>(
      files.size(), std::max(1u, std::min(hw, 8u)));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < nthreads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<FunctionRecord> out;
  for (auto& recs : per_file) {
    out.insert(out.end(), std::make_move_iterator(recs.begin()),
               std::make_move_iterator(recs.end()));
  }
  return out;
}

std::vector<RepoManifestEntry> filter_manifest(
    const std::vector<RepoManifestEntry>& entries, double max_months,
    double min_merge_rate) {
  std::vector<RepoManifestEntry> out;
  for (const auto& e : entries) {
    if (e.months_since_last_commit <= max_months &&
        e.pr_merge_rate > min_merge_rate) {
      out.push_back(e);
    }
  }
  return out;
}

std::vector<FunctionPair> filter_by_length_percentile(
    const std::vector<FunctionPair>& pairs, int low_pct, int high_pct) {
  if (pairs.empty()) throw_input("filter_by_length_percentile: empty input");
  std::vector<std::size_t> counts;
  counts.reserve(pairs.size());
  for (const auto& p : pairs) counts.push_back(count_lines(p.vulnerable.text));

  std::vector<std::size_t> sorted = counts;
  std::sort(sorted.begin(), sorted.end());
  auto nearest_rank = [&](double pct) -> std::size_t {
    if (pct <= 0.0) return sorted.front();
    std::size_t rank = static_cast<std::size_t>(
        std::ceil(pct / 100.0 * static_cast<double>(sorted.size())));
    if (rank < 1) rank = 1;
    if (rank > sorted.size()) rank = sorted.size();
    return sorted[rank - 1];
  };
  std::size_t low_cut = nearest_rank(low_pct);
  std::size_t high_cut = nearest_rank(100.0 - high_pct);

  std::vector<FunctionPair> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (counts[i] >= low_cut && counts[i] <= high_cut) out.push_back(pairs[i]);
  }
  return out;
}

}  // namespace vcc
