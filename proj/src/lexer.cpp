#include "vcc/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace vcc {

const char* language_name(Language lang) {
  switch (lang) {
    case Language::C: return "C";
    case Language::Cpp: return "CPP";
    case Language::Java: return "JAVA";
  }
  return "?";
}

bool language_from_name(std::string_view name, Language& out) {
  if (name == "C") {
    out = Language::C;
    return true;
  }
  if (name == "CPP") {
    out = Language::Cpp;
    return true;
  }
  if (name == "JAVA") {
    out = Language::Java;
    return true;
  }
  return false;
}

namespace {

const std::unordered_set<std::string_view> kCKeywords = {
    "auto", "break", "case", "char", "const", "continue", "default", "do",
    "double", "else", "enum", "extern", "float", "for", "goto", "if",
    "inline", "int", "long", "register", "restrict", "return", "short",
    "signed", "sizeof", "static", "struct", "switch", "typedef", "union",
    "unsigned", "void", "volatile", "while", "_Bool", "_Complex",
    "_Alignas", "_Alignof", "_Atomic", "_Generic", "_Noreturn",
    "_Static_assert", "_Thread_local"};

const std::unordered_set<std::string_view> kCppKeywords = {
    "alignas", "alignof", "and", "and_eq", "asm", "auto", "bitand", "bitor",
    "bool", "break", "case", "catch", "char", "char8_t", "char16_t",
    "char32_t", "class", "compl", "concept", "const", "consteval",
    "constexpr", "constinit", "const_cast", "continue", "co_await",
    "co_return", "co_yield", "decltype", "default", "delete", "do", "double",
    "dynamic_cast", "else", "enum", "explicit", "export", "extern", "false",
    "float", "for", "friend", "goto", "if", "inline", "int", "long",
    "mutable", "namespace", "new", "noexcept", "not", "not_eq", "nullptr",
    "operator", "or", "or_eq", "private", "protected", "public", "register",
    "reinterpret_cast", "requires", "return", "short", "signed", "sizeof",
    "static", "static_assert", "static_cast", "struct", "switch", "template",
    "this", "thread_local", "throw", "true", "try", "typedef", "typeid",
    "typename", "union", "unsigned", "using", "virtual", "void", "volatile",
    "wchar_t", "while", "xor", "xor_eq"};

const std::unordered_set<std::string_view> kJavaKeywords = {
    "abstract", "assert", "boolean", "break", "byte", "case", "catch",
    "char", "class", "const", "continue", "default", "do", "double", "else",
    "enum", "extends", "final", "finally", "float", "for", "goto", "if",
    "implements", "import", "instanceof", "int", "interface", "long",
    "native", "new", "package", "private", "protected", "public", "return",
    "short", "static", "strictfp", "super", "switch", "synchronized", "this",
    "throw", "throws", "transient", "try", "void", "volatile", "while",
    "true", "false", "null", "var", "record", "yield", "sealed", "permits"};

const std::unordered_set<std::string_view> kControl = {
    "if", "else", "for", "while", "do", "switch", "case", "return", "goto",
    "sizeof", "catch", "throw", "new", "delete", "alignof", "alignas",
    "noexcept", "decltype", "typeid", "static_assert", "assert",
    "synchronized", "instanceof", "defined", "_Alignof", "_Generic",
    "static_cast", "dynamic_cast", "const_cast", "reinterpret_cast",
    "co_await", "co_return", "co_yield", "requires", "asm", "yield"};

const std::unordered_set<std::string_view> kCBuiltinTypes = {
    "void", "char", "short", "int", "long", "float", "double", "signed",
    "unsigned", "_Bool", "bool", "wchar_t", "size_t", "ssize_t", "ptrdiff_t",
    "int8_t", "int16_t", "int32_t", "int64_t", "uint8_t", "uint16_t",
    "uint32_t", "uint64_t", "intptr_t", "uintptr_t", "char8_t", "char16_t",
    "char32_t", "auto"};

const std::unordered_set<std::string_view> kJavaBuiltinTypes = {
    "void", "boolean", "byte", "char", "short", "int", "long", "float",
    "double", "var"};

const std::unordered_set<std::string_view> kCDeclSpecifiers = {
    "const", "volatile", "static", "extern", "register", "restrict",
    "inline", "struct", "union", "enum", "typedef", "_Atomic",
    "_Thread_local", "constexpr", "consteval", "constinit", "mutable",
    "typename", "thread_local", "virtual", "explicit", "friend", "class"};

const std::unordered_set<std::string_view> kJavaDeclSpecifiers = {
    "final", "static", "public", "private", "protected", "abstract",
    "transient", "volatile", "synchronized", "native", "strictfp"};

bool ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}
bool ident_cont(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80;
}

// Longest punctuator first. Covers C, C++, and Java operators.
const std::array<std::string_view, 45> kPuncts = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->*", "<=>", "##",  "::",  "->",
    "++",   "--",  "<<",  ">>",  "<=",  ">=",  "==",  "!=",  "&&",  "||",
    "+=",   "-=",  "*=",  "/=",  "%=",  "&=",  "|=",  "^=",  ".*",  "+",
    "-",    "*",   "/",   "%",   "=",   "<",   ">",   "!",   "&",   "|",
    "^",    "~",   "?",   ":",   ";"};

struct Cursor {
  std::string_view src;
  std::size_t pos = 0;
  std::uint32_t line = 1;

  bool done() const { return pos >= src.size(); }
  char peek(std::size_t off = 0) const {
    return pos + off < src.size() ? src[pos + off] : '\0';
  }
  void advance() {
    if (src[pos] == '\n') ++line;
    ++pos;
  }
  void advance_n(std::size_t n) {
    for (std::size_t i = 0; i < n && !done(); ++i) advance();
  }
};

// Consume a quoted literal body after the opening quote, honoring backslash
// escapes. Stops at the closing quote or end of line/input.
void consume_quoted(Cursor& c, char quote, bool stop_at_newline) {
  while (!c.done()) {
    char ch = c.peek();
    if (ch == '\\') {
      c.advance();
      if (!c.done()) c.advance();
      continue;
    }
    if (ch == quote) {
      c.advance();
      return;
    }
    if (stop_at_newline && ch == '\n') return;  // unterminated on this line
    c.advance();
  }
}

// "u8" "u" "U" "L" optionally followed by R; returns length of the prefix
// (0 if this is not a literal prefix position).
std::size_t string_prefix_len(std::string_view s, std::size_t i, bool& raw) {
  raw = false;
  std::size_t n = 0;
  if (s.compare(i, 2, "u8") == 0) {
    n = 2;
  } else if (s[i] == 'u' || s[i] == 'U' || s[i] == 'L') {
    n = 1;
  }
  if (i + n < s.size() && s[i + n] == 'R') {
    raw = true;
    ++n;
  }
  if (n == 0) return 0;
  if (i + n < s.size() && (s[i + n] == '"' || (!raw && s[i + n] == '\''))) {
    return n;
  }
  raw = false;
  return 0;
}

}  // namespace

bool is_keyword(Language lang, std::string_view word) {
  switch (lang) {
    case Language::C: return kCKeywords.count(word) > 0;
    case Language::Cpp: return kCppKeywords.count(word) > 0;
    case Language::Java: return kJavaKeywords.count(word) > 0;
  }
  return false;
}

bool is_control_keyword(Language lang, std::string_view word) {
  return is_keyword(lang, word) && kControl.count(word) > 0;
}

bool is_builtin_type(Language lang, std::string_view word) {
  if (lang == Language::Java) return kJavaBuiltinTypes.count(word) > 0;
  return kCBuiltinTypes.count(word) > 0;
}

bool is_decl_specifier(Language lang, std::string_view word) {
  if (lang == Language::Java) return kJavaDeclSpecifiers.count(word) > 0;
  return kCDeclSpecifiers.count(word) > 0;
}

TokenStream tokenize(std::string_view source, Language lang,
                     bool keep_comments) {
  TokenStream ts;
  ts.source = source;
  Cursor c{source};

  bool cpp_family = lang != Language::Java;
  bool in_preproc = false;
  bool at_line_start = true;  // only whitespace seen so far on this line
  std::size_t last_end = 0;

  auto push = [&](TokenKind kind, std::size_t begin, std::uint32_t line) {
    Token t;
    t.kind = kind;
    t.begin = static_cast<std::uint32_t>(begin);
    t.end = static_cast<std::uint32_t>(c.pos);
    t.line = line;
    t.preproc = in_preproc;
    t.glued = begin == last_end && !ts.tokens.empty();
    last_end = c.pos;
    if (kind != TokenKind::Comment || keep_comments) ts.tokens.push_back(t);
  };

  while (!c.done()) {
    char ch = c.peek();

    // whitespace and line boundaries
    if (ch == '\n') {
      in_preproc = false;
      at_line_start = true;
      c.advance();
      continue;
    }
    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\f' || ch == '\v') {
      c.advance();
      continue;
    }
    // line continuation
    if (cpp_family && ch == '\\' &&
        (c.peek(1) == '\n' || (c.peek(1) == '\r' && c.peek(2) == '\n'))) {
      c.advance();  // backslash
      if (c.peek() == '\r') c.advance();
      c.advance();  // newline; preproc state survives the splice
      continue;
    }

    std::size_t begin = c.pos;
    std::uint32_t line = c.line;

    // comments
    if (ch == '/' && c.peek(1) == '/') {
      c.advance_n(2);
      while (!c.done()) {
        if (cpp_family && c.peek() == '\\' &&
            (c.peek(1) == '\n' || (c.peek(1) == '\r' && c.peek(2) == '\n'))) {
          c.advance();
          if (c.peek() == '\r') c.advance();
          c.advance();
          continue;
        }
        if (c.peek() == '\n') break;
        c.advance();
      }
      push(TokenKind::Comment, begin, line);
      at_line_start = false;
      continue;
    }
    if (ch == '/' && c.peek(1) == '*') {
      c.advance_n(2);
      while (!c.done()) {
        if (c.peek() == '*' && c.peek(1) == '/') {
          c.advance_n(2);
          break;
        }
        c.advance();
      }
      push(TokenKind::Comment, begin, line);
      at_line_start = false;
      continue;
    }

    // preprocessor directive start
    if (cpp_family && ch == '#' && at_line_start) {
      in_preproc = true;
      c.advance();
      push(TokenKind::Punct, begin, line);
      at_line_start = false;
      continue;
    }

    at_line_start = false;

    // Java text block
    if (lang == Language::Java && ch == '"' && c.peek(1) == '"' &&
        c.peek(2) == '"') {
      c.advance_n(3);
      while (!c.done()) {
        if (c.peek() == '\\') {
          c.advance();
          if (!c.done()) c.advance();
          continue;
        }
        if (c.peek() == '"' && c.peek(1) == '"' && c.peek(2) == '"') {
          c.advance_n(3);
          break;
        }
        c.advance();
      }
      push(TokenKind::String, begin, line);
      continue;
    }

    // string / char literal, possibly with C/C++ prefix
    bool raw = false;
    std::size_t plen =
        cpp_family && ident_start(static_cast<unsigned char>(ch))
            ? string_prefix_len(source, c.pos, raw)
            : 0;
    if (ch == '"' || ch == '\'' || plen > 0) {
      c.advance_n(plen);
      char quote = c.peek();
      if (raw && quote == '"') {
        // R"delim( ... )delim"
        c.advance();  // opening quote
        std::size_t dstart = c.pos;
        while (!c.done() && c.peek() != '(') c.advance();
        std::string delim(source.substr(dstart, c.pos - dstart));
        std::string close = ")" + delim + "\"";
        if (!c.done()) c.advance();  // '('
        while (!c.done()) {
          if (c.peek() == ')' &&
              source.compare(c.pos, close.size(), close) == 0) {
            c.advance_n(close.size());
            break;
          }
          c.advance();
        }
        push(TokenKind::String, begin, line);
        continue;
      }
      c.advance();  // opening quote
      consume_quoted(c, quote, /*stop_at_newline=*/true);
      push(quote == '\'' ? TokenKind::CharLit : TokenKind::String, begin,
           line);
      continue;
    }

    // number
    if (std::isdigit(static_cast<unsigned char>(ch)) ||
        (ch == '.' && std::isdigit(static_cast<unsigned char>(c.peek(1))))) {
      c.advance();
      while (!c.done()) {
        char d = c.peek();
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '.' ||
            d == '_') {
          // exponent sign
          if ((d == 'e' || d == 'E' || d == 'p' || d == 'P') &&
              (c.peek(1) == '+' || c.peek(1) == '-')) {
            c.advance_n(2);
            continue;
          }
          c.advance();
          continue;
        }
        // C++14 digit separator: 1'000'000
        if (cpp_family && d == '\'' &&
            std::isalnum(static_cast<unsigned char>(c.peek(1)))) {
          c.advance_n(2);
          continue;
        }
        break;
      }
      push(TokenKind::Number, begin, line);
      continue;
    }

    // identifier
    if (ident_start(static_cast<unsigned char>(ch))) {
      c.advance();
      while (!c.done() && ident_cont(static_cast<unsigned char>(c.peek())))
        c.advance();
      push(TokenKind::Identifier, begin, line);
      continue;
    }

    // punctuator, longest match
    bool matched = false;
    for (std::string_view p : kPuncts) {
      if (source.compare(c.pos, p.size(), p) == 0) {
        c.advance_n(p.size());
        push(TokenKind::Punct, begin, line);
        matched = true;
        break;
      }
    }
    if (!matched) {
      c.advance();  // single unknown byte as punct
      push(TokenKind::Punct, begin, line);
    }
  }
  return ts;
}

}  // namespace vcc
