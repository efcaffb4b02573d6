#pragma once

#include <string>
#include <string_view>

#include "vcc/corpus.hpp"
#include "vcc/lexer.hpp"

namespace vcc {

struct AbstractedFunction {
  std::string source_id;
  std::string abstracted_text;  // placeholder form, no whitespace/comments
  std::string digest;           // md5 of abstracted_text
  bool degraded = false;        // header not recognized; no placeholders
};

// Removes // and /* */ comments outside string/char literals. Block comments
// become a single space; newlines inside them are kept so remaining code
// stays on its original lines. Unterminated block comments strip to the end.
std::string strip_comments(std::string_view text, Language language);

// CRLF -> LF, tabs -> space, space runs -> one space, trailing spaces
// removed, blank-line runs -> one blank line. Idempotent.
std::string normalize_whitespace(std::string_view text);

// Lowercases language keyword tokens. C/C++/Java keywords are already
// lowercase, so this is a near-identity kept for contract uniformity.
std::string normalize_keyword_case(std::string_view text, Language language);

// strip_comments, then normalize_whitespace, then normalize_keyword_case.
std::string preprocess(std::string_view text, Language language);

// Parameter names -> FPARAM, local variable names -> LVAR, declared type
// names -> DTYPE, called function names -> FUNCCALL; then comments and all
// whitespace are dropped. Priority per occurrence: type, call, parameter,
// local. When the function header cannot be recognized the result degrades
// to comment/whitespace-stripped text with no placeholders.
AbstractedFunction abstract_function(const FunctionRecord& record);

inline bool hash_match(const AbstractedFunction& a,
                       const AbstractedFunction& b) {
  return a.digest == b.digest;
}

}  // namespace vcc
