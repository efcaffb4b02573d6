#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace vcc {

// Replace every invalid UTF-8 sequence with U+FFFD. Valid input passes
// through byte-identical. Overlong encodings, surrogates, and values
// above U+10FFFF count as invalid.
std::string utf8_sanitize(std::string_view bytes);

// Read a whole file as bytes. Returns false on any I/O failure.
bool read_file(const std::string& path, std::string& out);

// Byte offset of the start of each 1-based line; back element is text.size().
std::vector<std::size_t> line_starts(std::string_view text);

// Slice of full lines [start_line, end_line], 1-based inclusive, without the
// trailing newline of end_line.
std::string_view line_slice(std::string_view text,
                            const std::vector<std::size_t>& starts,
                            std::size_t start_line, std::size_t end_line);

std::size_t count_lines(std::string_view text);

}  // namespace vcc
