#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dsrl/corpus.hpp"
#include "dsrl/inventory.hpp"

namespace dsrl {

// Two leading special tokens selecting inventory and formalism, rendered
// inventory first: "<propbank><dep-srl>".
struct StylePrefix {
  Style inventory = Style::propbank;
  Formalism formalism = Formalism::span;

  std::string render() const;
  bool operator==(const StylePrefix&) const = default;
};

struct DescriptionSequence {
  std::string surface;  // includes the rendered prefix, if any
  std::optional<StylePrefix> prefix;

  bool operator==(const DescriptionSequence&) const = default;
};

struct ParsedArgument {
  std::string text;        // unescaped argument words
  std::string definition;  // unescaped, trimmed role definition
  Link link = Link::none;
  std::size_t offset = 0;  // position of '[' in the surface
  std::optional<TokenRange> alignment;

  bool operator==(const ParsedArgument&) const = default;
};

struct ParsedStructure {
  std::optional<StylePrefix> prefix;
  std::string predicate_surface;
  std::string sense_definition;
  std::vector<ParsedArgument> arguments;  // left-to-right surface order

  bool operator==(const ParsedStructure&) const = default;
};

enum class IssueKind {
  unbalanced_bracket,
  missing_sense_header,
  unalignable_argument,
  stray_marker,
  truncated,
};

std::string_view to_string(IssueKind kind);

struct DecodeIssue {
  IssueKind kind = IssueKind::unbalanced_bracket;
  std::size_t position = 0;  // byte offset into the surface
  std::string note;

  bool operator==(const DecodeIssue&) const = default;
};

struct DecodeResult {
  ParsedStructure structure;
  std::vector<DecodeIssue> issues;
};

// Backslash-escapes '[', ']', '{', '}' and '\'.
std::string escape_text(std::string_view s);
std::string unescape_text(std::string_view s);

// Model input: the sentence with "<p>" / "</p>" around the predicate tokens.
std::string encode_input(const Sentence& sentence, const PredicateInstance& pred);

// Model target:
//   [prefix ]lemma: sense definition. w1 [arg words]{role definition} ... wn
// Requires a span-formalism structure whose sense and roles resolve in `inv`.
DescriptionSequence encode_target(const AnnotatedStructure& structure,
                                  const Sentence& sentence, const Inventory& inv,
                                  std::optional<StylePrefix> prefix = {});

// Recognizes one inventory token and one formalism token, in either order, at
// the very start. The single space following the prefix is consumed.
std::pair<std::optional<StylePrefix>, std::string_view> strip_prefix(
    std::string_view surface);

// Total over arbitrary input: never throws on content, reports problems as
// issues instead of repairing them. When `sentence` is given, arguments are
// aligned to token ranges.
DecodeResult decode_description(std::string_view surface,
                                const Sentence* sentence = nullptr);
DecodeResult decode_description(const DescriptionSequence& seq,
                                const Sentence* sentence = nullptr);

}  // namespace dsrl
