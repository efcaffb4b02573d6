#include "vcc/text.hpp"

#include <fstream>

namespace vcc {

namespace {

// Returns the length of the valid UTF-8 sequence starting at i, or 0.
std::size_t utf8_seq_len(std::string_view s, std::size_t i) {
  unsigned char c0 = s[i];
  if (c0 < 0x80) return 1;
  std::size_t n;
  unsigned long cp;
  if ((c0 & 0xe0) == 0xc0) {
    n = 2;
    cp = c0 & 0x1f;
  } else if ((c0 & 0xf0) == 0xe0) {
    n = 3;
    cp = c0 & 0x0f;
  } else if ((c0 & 0xf8) == 0xf0) {
    n = 4;
    cp = c0 & 0x07;
  } else {
    return 0;
  }
  if (i + n > s.size()) return 0;
  for (std::size_t k = 1; k < n; ++k) {
    unsigned char c = s[i + k];
    if ((c & 0xc0) != 0x80) return 0;
    cp = (cp << 6) | (c & 0x3f);
  }
  // overlong / surrogate / out of range
  if (n == 2 && cp < 0x80) return 0;
  if (n == 3 && cp < 0x800) return 0;
  if (n == 4 && cp < 0x10000) return 0;
  if (cp >= 0xd800 && cp <= 0xdfff) return 0;
  if (cp > 0x10ffff) return 0;
  return n;
}

}  // namespace

std::string utf8_sanitize(std::string_view bytes) {
  std::string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  while (i < bytes.size()) {
    std::size_t n = utf8_seq_len(bytes, i);
    if (n == 0) {
      out += "\xef\xbf\xbd";  // U+FFFD
      ++i;
    } else {
      out.append(bytes.substr(i, n));
      i += n;
    }
  }
  return out;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  in.seekg(0, std::ios::end);
  std::streamoff n = in.tellg();
  if (n < 0) return false;
  out.assign(static_cast<std::size_t>(n), '\0');
  if (n == 0) return true;
  in.seekg(0, std::ios::beg);
  in.read(out.data(), n);
  return in.good() || in.eof();
}

std::vector<std::size_t> line_starts(std::string_view text) {
  std::vector<std::size_t> starts{0};
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n') starts.push_back(i + 1);
  }
  starts.push_back(text.size());
  return starts;
}

std::string_view line_slice(std::string_view text,
                            const std::vector<std::size_t>& starts,
                            std::size_t start_line, std::size_t end_line) {
  std::size_t nlines = starts.size() - 1;
  if (start_line < 1 || end_line < start_line || start_line > nlines) return {};
  if (end_line > nlines) end_line = nlines;
  std::size_t begin = starts[start_line - 1];
  std::size_t end = starts[end_line];  // start of the next line
  // drop the trailing newline (and a CR before it) of end_line
  if (end > begin && text[end - 1] == '\n') --end;
  if (end > begin && text[end - 1] == '\r') --end;
  return text.substr(begin, end - begin);
}

std::size_t count_lines(std::string_view text) {
  if (text.empty()) return 0;
  std::size_t n = 1;
  for (char c : text)
    if (c == '\n') ++n;
  // a trailing newline does not open a new line
  if (text.back() == '\n') --n;
  return n;
}

}  // namespace vcc
