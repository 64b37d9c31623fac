#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Small byte-string helpers shared across modules. All case folding and
// whitespace handling is ASCII-only; other UTF-8 bytes pass through.
namespace dsrl::text {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string_view> split_whitespace(std::string_view s);

// Number of UTF-8 code points (continuation bytes are not counted).
std::size_t utf8_length(std::string_view s);

}  // namespace dsrl::text
