#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace vcc {

enum class Language { C, Cpp, Java };

const char* language_name(Language lang);          // "C" | "CPP" | "JAVA"
bool language_from_name(std::string_view name, Language& out);

enum class TokenKind : std::uint8_t {
  Identifier,
  Number,
  String,    // string literal, incl. prefix / raw / text block
  CharLit,
  Punct,
  Comment,   // line or block comment, delimiters included
};

struct Token {
  TokenKind kind;
  std::uint32_t begin = 0;   // byte offsets, [begin, end)
  std::uint32_t end = 0;
  std::uint32_t line = 1;    // 1-based line of first byte
  bool preproc = false;      // part of a preprocessor directive (C/C++)
  bool glued = false;        // no whitespace between this and previous token
};

struct TokenStream {
  std::string_view source;
  std::vector<Token> tokens;

  std::string_view text(const Token& t) const {
    return source.substr(t.begin, t.end - t.begin);
  }
  std::string_view text(std::size_t i) const { return text(tokens[i]); }
};

// Splits source into tokens. Never fails: unknown bytes become 1-char punct
// tokens, unterminated literals/comments run to end of input.
TokenStream tokenize(std::string_view source, Language lang,
                     bool keep_comments);

bool is_keyword(Language lang, std::string_view word);

// Keywords that can directly precede a parenthesized expression and must not
// be mistaken for function names (if, while, switch, ...).
bool is_control_keyword(Language lang, std::string_view word);

// Builtin type keywords (int, char, boolean, ...) treated as type names by
// the abstraction pass.
bool is_builtin_type(Language lang, std::string_view word);

// Declaration-specifier keywords that may appear inside a declaration without
// being the type name itself (const, static, unsigned, final, ...).
bool is_decl_specifier(Language lang, std::string_view word);

}  // namespace vcc
