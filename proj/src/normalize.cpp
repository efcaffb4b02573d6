#include "vcc/normalize.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include "vcc/digest.hpp"
#include "vcc/text.hpp"

namespace vcc {

std::string strip_comments(std::string_view text, Language language) {
  std::string sanitized = utf8_sanitize(text);
  TokenStream ts = tokenize(sanitized, language, /*keep_comments=*/true);
  std::string out;
  out.reserve(sanitized.size());
  std::size_t prev_end = 0;
  for (const Token& t : ts.tokens) {
    out.append(sanitized, prev_end, t.begin - prev_end);
    if (t.kind == TokenKind::Comment) {
      std::string_view body = ts.text(t);
      if (body.rfind("/*", 0) == 0) {
        out.push_back(' ');
        for (char c : body) {
          if (c == '\n') out.push_back('\n');
        }
      }
      // line comments vanish; the newline after them is inter-token space
    } else {
      out.append(ts.text(t));
    }
    prev_end = t.end;
  }
  out.append(sanitized, prev_end, sanitized.size() - prev_end);
  return out;
}

std::string normalize_whitespace(std::string_view text) {
  // pass 1: line endings and tab/space collapsing
  std::string flat;
  flat.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\r') {
      if (i + 1 < text.size() && text[i + 1] == '\n') continue;
      flat.push_back('\n');
      continue;
    }
    if (c == '\t') c = ' ';
    if (c == ' ' && !flat.empty() && flat.back() == ' ') continue;
    flat.push_back(c);
  }
  // pass 2: trailing spaces and blank-line runs
  std::string out;
  out.reserve(flat.size());
  std::string line;
  bool prev_blank = false;
  bool first = true;
  auto emit = [&](bool last) {
    while (!line.empty() && line.back() == ' ') line.pop_back();
    bool blank = line.empty();
    if (blank && prev_blank) {
      if (last) return;
      return;  // collapse run
    }
    if (!first) out.push_back('\n');
    out += line;
    first = false;
    prev_blank = blank;
  };
  for (char c : flat) {
    if (c == '\n') {
      emit(false);
      line.clear();
    } else {
      line.push_back(c);
    }
  }
  emit(true);
  return out;
}

std::string normalize_keyword_case(std::string_view text, Language language) {
  std::string sanitized = utf8_sanitize(text);
  TokenStream ts = tokenize(sanitized, language, /*keep_comments=*/true);
  std::string out;
  out.reserve(sanitized.size());
  std::size_t prev_end = 0;
  for (const Token& t : ts.tokens) {
    out.append(sanitized, prev_end, t.begin - prev_end);
    std::string_view word = ts.text(t);
    if (t.kind == TokenKind::Identifier && is_keyword(language, word)) {
      for (char c : word) {
        out.push_back(
            static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      }
    } else {
      out.append(word);
    }
    prev_end = t.end;
  }
  out.append(sanitized, prev_end, sanitized.size() - prev_end);
  return out;
}

std::string preprocess(std::string_view text, Language language) {
  return normalize_keyword_case(
      normalize_whitespace(strip_comments(text, language)), language);
}

namespace {

struct HeaderInfo {
  std::size_t name_idx;    // token index of the function name
  std::size_t open_paren;  // '(' of the parameter list
  std::size_t close_paren;
  std::size_t body_open;   // '{'
  std::size_t body_close;
};

std::size_t match_paren(const TokenStream& ts, std::size_t i) {
  int depth = 0;
  for (; i < ts.tokens.size(); ++i) {
    std::string_view t = ts.text(i);
    if (t == "(" || t == "[" || t == "{") ++depth;
    if (t == ")" || t == "]" || t == "}") {
      if (--depth == 0) return i;
    }
  }
  return std::string_view::npos;
}

std::size_t match_paren_back(const TokenStream& ts, std::size_t close) {
  int depth = 0;
  std::size_t i = close + 1;
  while (i-- > 0) {
    std::string_view t = ts.text(i);
    if (t == ")" || t == "]" || t == "}") ++depth;
    if (t == "(" || t == "[" || t == "{") {
      if (--depth == 0) return i;
    }
  }
  return std::string_view::npos;
}

// Locates the declarator of the (single) function in the text: the last
// `name(...)` group before the first top-level '{', skipping trailers like
// const/noexcept(...)/throws and constructor initializer items.
bool find_header(const TokenStream& ts, Language lang, HeaderInfo& h) {
  std::size_t n = ts.tokens.size();
  std::size_t body_open = std::string_view::npos;
  int depth = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::string_view t = ts.text(i);
    if (t == "(" || t == "[") ++depth;
    if (t == ")" || t == "]") --depth;
    if (t == "{" && depth == 0) {
      body_open = i;
      break;
    }
  }
  if (body_open == std::string_view::npos || body_open == 0) return false;
  std::size_t body_close = match_paren(ts, body_open);
  if (body_close == std::string_view::npos) return false;

  std::size_t k = body_open;
  while (k-- > 0) {
    std::string_view t = ts.text(k);
    if (t == "=" || t == ";" || t == "{" || t == "}") return false;
    if (t == ")" || t == "]") {
      std::size_t open = match_paren_back(ts, k);
      if (open == std::string_view::npos || open == 0) return false;
      if (t == ")" && ts.tokens[open - 1].kind == TokenKind::Identifier) {
        std::string_view name = ts.text(open - 1);
        bool control = is_control_keyword(lang, name) || name == "throws";
        std::string_view before =
            open >= 2 ? ts.text(open - 2) : std::string_view{};
        if (!control && before != ":" && before != ",") {
          h.name_idx = open - 1;
          h.open_paren = open;
          h.close_paren = k;
          h.body_open = body_open;
          h.body_close = body_close;
          return true;
        }
      }
      k = open;  // skip the group (noexcept(...), init item, attribute)
      continue;
    }
  }
  return false;
}

bool type_ish(const TokenStream& ts, Language lang, std::size_t i) {
  const Token& t = ts.tokens[i];
  std::string_view s = ts.text(i);
  if (t.kind == TokenKind::Identifier) {
    if (!is_keyword(lang, s)) return true;
    return is_builtin_type(lang, s) || is_decl_specifier(lang, s);
  }
  if (lang == Language::Java && (s == "." || s == "@")) return true;
  return s == "*" || s == "&" || s == "::" || s == "<" || s == ">" ||
         s == "[" || s == "]";
}

// Identifier-token indices that name a parameter / local / type within one
// declaration head [begin, end).
struct DeclNames {
  std::vector<std::size_t> type_tokens;
  std::size_t name_token = std::string_view::npos;
};

// Parses one parameter: the name is the last depth-0 identifier (or the
// `(*name)` of a function pointer); every other identifier or builtin type
// keyword is a type token.
DeclNames parse_param(const TokenStream& ts, Language lang, std::size_t begin,
                      std::size_t end) {
  DeclNames out;
  // function-pointer form
  for (std::size_t i = begin; i + 2 < end; ++i) {
    if (ts.text(i) == "(" && ts.text(i + 1) == "*" &&
        ts.tokens[i + 2].kind == TokenKind::Identifier &&
        !is_keyword(lang, ts.text(i + 2))) {
      out.name_token = i + 2;
      break;
    }
  }
  int depth = 0;
  std::size_t stop = end;
  for (std::size_t i = begin; i < end; ++i) {
    std::string_view s = ts.text(i);
    if (s == "=" && depth == 0) {
      stop = i;  // default value, not part of the declarator
      break;
    }
    if (s == "(" || s == "[" || s == "<") ++depth;
    if (s == ")" || s == "]" || s == ">") --depth;
  }
  std::size_t last_ident = std::string_view::npos;
  depth = 0;
  for (std::size_t i = begin; i < stop; ++i) {
    std::string_view s = ts.text(i);
    if (s == "(" || s == "[" || s == "<") {
      ++depth;
      continue;
    }
    if (s == ")" || s == "]" || s == ">") {
      --depth;
      continue;
    }
    if (ts.tokens[i].kind != TokenKind::Identifier) continue;
    bool kw = is_keyword(lang, s);
    if (kw && !is_builtin_type(lang, s)) continue;  // specifier
    if (depth == 0 && !kw) last_ident = i;
    if (is_builtin_type(lang, s) || kw) {
      out.type_tokens.push_back(i);
    } else {
      out.type_tokens.push_back(i);  // candidate; name pruned below
    }
  }
  if (out.name_token == std::string_view::npos) out.name_token = last_ident;
  if (out.name_token != std::string_view::npos) {
    out.type_tokens.erase(std::remove(out.type_tokens.begin(),
                                      out.type_tokens.end(), out.name_token),
                          out.type_tokens.end());
  }
  return out;
}

}  // namespace

AbstractedFunction abstract_function(const FunctionRecord& record) {
  AbstractedFunction out;
  out.source_id = record.id;

  std::string sanitized = utf8_sanitize(record.text);
  TokenStream ts = tokenize(sanitized, record.language,
                            /*keep_comments=*/false);
  Language lang = record.language;

  auto emit_all_plain = [&]() {
    std::string acc;
    for (std::size_t i = 0; i < ts.tokens.size(); ++i) {
      for (char c : ts.text(i)) {
        if (!std::isspace(static_cast<unsigned char>(c))) acc.push_back(c);
      }
    }
    out.abstracted_text = std::move(acc);
    out.degraded = true;
    out.digest = md5_hex(out.abstracted_text);
  };

  HeaderInfo h;
  if (ts.tokens.empty() || !find_header(ts, lang, h)) {
    emit_all_plain();
    return out;
  }

  std::unordered_set<std::string_view> param_names;
  std::unordered_set<std::string_view> local_names;
  std::unordered_set<std::string_view> type_names;
  std::unordered_set<std::size_t> declared_positions;
  declared_positions.insert(h.name_idx);

  auto note_types = [&](const std::vector<std::size_t>& idxs) {
    for (std::size_t i : idxs) type_names.insert(ts.text(i));
  };

  // return type: identifiers and builtin types before the declarator
  {
    std::size_t name_begin = h.name_idx;
    while (name_begin >= 2 && ts.text(name_begin - 1) == "::") {
      name_begin -= 2;  // skip qualifiers; they belong to the name
    }
    for (std::size_t i = 0; i < name_begin; ++i) {
      if (ts.tokens[i].kind != TokenKind::Identifier) continue;
      std::string_view s = ts.text(i);
      if (is_keyword(lang, s) && !is_builtin_type(lang, s)) continue;
      if (s == record.name) continue;
      type_names.insert(s);
      declared_positions.insert(i);
    }
  }

  // parameters
  {
    std::size_t item = h.open_paren + 1;
    int depth = 0;
    for (std::size_t i = h.open_paren + 1; i <= h.close_paren; ++i) {
      std::string_view s = ts.text(i);
      bool at_end = i == h.close_paren;
      if (!at_end && (s == "(" || s == "[" || s == "<" || s == "{")) ++depth;
      if (!at_end && (s == ")" || s == "]" || s == ">" || s == "}")) --depth;
      if ((at_end || (s == "," && depth == 0)) && i > item) {
        DeclNames d = parse_param(ts, lang, item, i);
        if (d.name_token != std::string_view::npos) {
          param_names.insert(ts.text(d.name_token));
          declared_positions.insert(d.name_token);
        }
        note_types(d.type_tokens);
        for (std::size_t ti : d.type_tokens) declared_positions.insert(ti);
        item = i + 1;
      }
    }
  }

  // local declarations inside the body
  {
    std::size_t i = h.body_open + 1;
    std::size_t stmt = i;
    auto scan_decl = [&](std::size_t from, std::size_t limit) {
      // head: run of type-ish tokens ending just before a plausible name
      std::size_t j = from;
      std::vector<std::size_t> idents;
      while (j < limit && type_ish(ts, lang, j)) {
        if (ts.tokens[j].kind == TokenKind::Identifier) idents.push_back(j);
        ++j;
      }
      if (idents.size() < 2 || j >= limit) return;
      std::size_t name = idents.back();
      if (name + 1 != j) return;  // name must end the head
      std::string_view before_name = ts.text(name - 1);
      if (before_name == "." || before_name == "::") return;  // member access
      std::string_view next = ts.text(j);
      bool ok = next == "=" || next == ";" || next == "," || next == ":" ||
                next == "(";
      if (!ok) return;
      local_names.insert(ts.text(name));
      declared_positions.insert(name);
      for (std::size_t k : idents) {
        if (k == name) continue;
        std::string_view s = ts.text(k);
        if (is_decl_specifier(lang, s) && !is_builtin_type(lang, s)) continue;
        type_names.insert(s);
        declared_positions.insert(k);
      }
      // comma-separated declarator list: int a = 1, b, *c;
      while (j < limit && ts.text(j) != ";") {
        if (ts.text(j) == ",") {
          std::size_t k = j + 1;
          while (k < limit && (ts.text(k) == "*" || ts.text(k) == "&"))
            ++k;
          if (k < limit && ts.tokens[k].kind == TokenKind::Identifier &&
              !is_keyword(lang, ts.text(k))) {
            local_names.insert(ts.text(k));
            declared_positions.insert(k);
          }
        }
        // stay inside this statement
        std::string_view s = ts.text(j);
        if (s == "(" || s == "[" || s == "{") {
          std::size_t c = match_paren(ts, j);
          if (c == std::string_view::npos) break;
          j = c;
        }
        ++j;
      }
    };
    while (i < h.body_close) {
      std::string_view s = ts.text(i);
      if (s == ";" || s == "{" || s == "}") {
        stmt = i + 1;
        ++i;
        continue;
      }
      if (s == "(" && i > 0 && ts.text(i - 1) == "for") {
        scan_decl(i + 1, h.body_close);
        ++i;
        stmt = i;
        continue;
      }
      if (i == stmt) scan_decl(stmt, h.body_close);
      ++i;
    }
  }

  // emit with per-occurrence priority: type, call, parameter, local
  std::string acc;
  for (std::size_t i = 0; i < ts.tokens.size(); ++i) {
    const Token& t = ts.tokens[i];
    std::string_view s = ts.text(i);
    std::string_view piece = s;
    if (t.kind == TokenKind::Identifier) {
      bool call_site = i + 1 < ts.tokens.size() && ts.text(i + 1) == "(" &&
                       !is_control_keyword(lang, s) &&
                       !declared_positions.count(i);
      if (type_names.count(s)) {
        piece = "DTYPE";
      } else if (call_site && !is_keyword(lang, s)) {
        piece = "FUNCCALL";
      } else if (param_names.count(s)) {
        piece = "FPARAM";
      } else if (local_names.count(s)) {
        piece = "LVAR";
      }
    }
    for (char c : piece) {
      if (!std::isspace(static_cast<unsigned char>(c))) acc.push_back(c);
    }
  }
  out.abstracted_text = std::move(acc);
  out.degraded = false;
  out.digest = md5_hex(out.abstracted_text);
  return out;
}

}  // namespace vcc
