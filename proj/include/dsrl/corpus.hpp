#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dsrl {

// Token ranges are 0-based and inclusive on both ends everywhere in the
// toolkit: a single token `i` is the range {i, i}.
struct TokenRange {
  int start = 0;
  int end = 0;

  int width() const { return end - start + 1; }
  bool overlaps(const TokenRange& other) const {
    return start <= other.end && other.start <= end;
  }
  auto operator<=>(const TokenRange&) const = default;
};

enum class Style { propbank, framenet };
enum class Formalism { dependency, span };
enum class Link { none, reference_to, continuation_of };

std::string_view to_string(Style style);
std::string_view to_string(Formalism formalism);
std::string_view to_string(Link link);
std::optional<Style> parse_style(std::string_view s);
std::optional<Formalism> parse_formalism(std::string_view s);
std::optional<Link> parse_link(std::string_view s);

struct Sentence {
  std::string sentence_id;
  std::optional<std::string> doc_id;
  std::vector<std::string> tokens;

  int size() const { return static_cast<int>(tokens.size()); }
  // Surface text: tokens joined by single spaces.
  std::string text() const;
  bool operator==(const Sentence&) const = default;
};

struct PredicateInstance {
  std::string sentence_id;
  TokenRange range;
  std::string lemma;
  std::optional<std::string> sense;  // "give.01", or a frame name
  Style style = Style::propbank;

  bool operator==(const PredicateInstance&) const = default;
};

struct Argument {
  TokenRange span;
  std::string role;
  Link link = Link::none;

  bool operator==(const Argument&) const = default;
};

// Role label as it appears in CoNLL files and score items: the link flag is
// folded back into an "R-" / "C-" prefix.
std::string rendered_role(const Argument& arg);

// Inverse of rendered_role: "R-A1" -> ("A1", reference_to).
Argument argument_from_rendered(TokenRange span, std::string_view label);

struct AnnotatedStructure {
  PredicateInstance predicate;
  std::vector<Argument> arguments;
  Formalism formalism = Formalism::span;

  bool operator==(const AnnotatedStructure&) const = default;
};

// Throw Error(invariant) naming the violated constraint.
void validate(const Sentence& sentence);
void validate(const AnnotatedStructure& structure, const Sentence& sentence);

// Head tokens become width-1 spans; idempotent on span input.
AnnotatedStructure dependency_to_span(const AnnotatedStructure& structure);

// An immutable, validated collection of sentences and their annotations.
// Every constructor checks all invariants; a Corpus value is always valid.
// Structures are kept in sentence order, then predicate range order.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<Sentence> sentences,
         std::vector<AnnotatedStructure> structures,
         std::string provenance = {});

  const std::vector<Sentence>& sentences() const { return sentences_; }
  const std::vector<AnnotatedStructure>& structures() const {
    return structures_;
  }
  const std::string& provenance() const { return provenance_; }
  bool empty() const { return sentences_.empty(); }

  const Sentence* find_sentence(std::string_view sentence_id) const;
  const Sentence& sentence_of(const AnnotatedStructure& structure) const;

  // Sentences with at least one structure.
  std::size_t annotated_sentence_count() const;

  // Provenance is descriptive metadata and does not take part in equality.
  friend bool operator==(const Corpus& a, const Corpus& b) {
    return a.sentences_ == b.sentences_ && a.structures_ == b.structures_;
  }

 private:
  std::vector<Sentence> sentences_;
  std::vector<AnnotatedStructure> structures_;
  std::string provenance_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Canonical record-per-line interchange format.
Corpus parse_canonical(std::string_view document);
std::string write_canonical(const Corpus& corpus);

// CoNLL-2009 shared-task column format.
Corpus parse_conll2009(std::string_view document);
std::string write_conll2009(const Corpus& corpus);

}  // namespace dsrl
