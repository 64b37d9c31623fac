#include "dsrl/text.hpp"

#include "dsrl/error.hpp"

namespace dsrl {

std::string_view category_name(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::format: return "format_error";
    case ErrorCategory::invariant: return "invariant_error";
    case ErrorCategory::lookup: return "lookup_error";
    case ErrorCategory::precondition: return "precondition_error";
    case ErrorCategory::contract: return "contract_error";
    case ErrorCategory::alignment: return "alignment_error";
    case ErrorCategory::backend: return "backend_error";
    case ErrorCategory::protocol: return "protocol_error";
    case ErrorCategory::io: return "io_error";
    case ErrorCategory::usage: return "usage_error";
  }
  return "error";
}

namespace text {

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && is_space(s[begin])) ++begin;
  while (end > begin && is_space(s[end - 1])) --end;
  return s.substr(begin, end - begin);
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      break;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

}  // namespace text
}  // namespace dsrl
