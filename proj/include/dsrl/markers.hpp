#pragma once

#include <array>
#include <string_view>

namespace dsrl::markers {

// Surface forms of the special tokens. These strings are part of the wire
// format shared with external trainers and must not change.
inline constexpr std::string_view kPredicateOpen = "<p>";
inline constexpr std::string_view kPredicateClose = "</p>";
inline constexpr std::string_view kReferenceTo = "<reference-to>";
inline constexpr std::string_view kContinuationOf = "<continuation-of>";
inline constexpr std::string_view kPropBank = "<propbank>";
inline constexpr std::string_view kFrameNet = "<framenet>";
inline constexpr std::string_view kSpanSrl = "<span-srl>";
inline constexpr std::string_view kDepSrl = "<dep-srl>";

inline constexpr std::array<std::string_view, 8> kAll = {
    kPredicateOpen, kPredicateClose, kReferenceTo, kContinuationOf,
    kPropBank,      kFrameNet,       kSpanSrl,     kDepSrl,
};

// True when `s` contains any special token as a substring.
inline bool contains_marker(std::string_view s) {
  for (std::string_view m : kAll) {
    if (s.find(m) != std::string_view::npos) return true;
  }
  return false;
}

}  // namespace dsrl::markers
