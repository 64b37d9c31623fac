#include "dsrl/corpus.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <set>
#include <utility>

#include "dsrl/error.hpp"
#include "dsrl/markers.hpp"
#include "dsrl/text.hpp"

namespace dsrl {

namespace {

[[noreturn]] void invariant_failure(const std::string& message) {
  throw Error(ErrorCategory::invariant, message);
}

std::string describe(const TokenRange& r) {
  return fmt::format("[{}..{}]", r.start, r.end);
}

}  // namespace

std::string_view to_string(Style style) {
  return style == Style::propbank ? "propbank" : "framenet";
}

std::string_view to_string(Formalism formalism) {
  return formalism == Formalism::dependency ? "dependency" : "span";
}

std::string_view to_string(Link link) {
  switch (link) {
    case Link::none: return "none";
    case Link::reference_to: return "reference_to";
    case Link::continuation_of: return "continuation_of";
  }
  return "none";
}

std::optional<Style> parse_style(std::string_view s) {
  if (s == "propbank") return Style::propbank;
  if (s == "framenet") return Style::framenet;
  return std::nullopt;
}

std::optional<Formalism> parse_formalism(std::string_view s) {
  if (s == "dependency") return Formalism::dependency;
  if (s == "span") return Formalism::span;
  return std::nullopt;
}

std::optional<Link> parse_link(std::string_view s) {
  if (s == "none") return Link::none;
  if (s == "reference_to") return Link::reference_to;
  if (s == "continuation_of") return Link::continuation_of;
  return std::nullopt;
}

std::string Sentence::text() const { return text::join(tokens, " "); }

std::string rendered_role(const Argument& arg) {
  switch (arg.link) {
    case Link::reference_to: return "R-" + arg.role;
    case Link::continuation_of: return "C-" + arg.role;
    case Link::none: break;
  }
  return arg.role;
}

Argument argument_from_rendered(TokenRange span, std::string_view label) {
  Argument arg{span, std::string(label), Link::none};
  if (label.size() > 2 && label[1] == '-') {
    if (label[0] == 'R') {
      arg.link = Link::reference_to;
      arg.role = std::string(label.substr(2));
    } else if (label[0] == 'C') {
      arg.link = Link::continuation_of;
      arg.role = std::string(label.substr(2));
    }
  }
  return arg;
}

void validate(const Sentence& sentence) {
  if (sentence.sentence_id.empty()) {
    invariant_failure("sentence has an empty sentence_id");
  }
  if (sentence.tokens.empty()) {
    invariant_failure(fmt::format("sentence '{}' has no tokens",
                                  sentence.sentence_id));
  }
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    const std::string& tok = sentence.tokens[i];
    if (tok.empty()) {
      invariant_failure(fmt::format("sentence '{}': token {} is empty",
                                    sentence.sentence_id, i));
    }
    for (char c : tok) {
      if (text::is_space(c)) {
        invariant_failure(fmt::format(
            "sentence '{}': token {} contains whitespace",
            sentence.sentence_id, i));
      }
    }
    if (markers::contains_marker(tok)) {
      invariant_failure(fmt::format(
          "sentence '{}': token {} contains a reserved marker ('{}')",
          sentence.sentence_id, i, tok));
    }
  }
}

void validate(const AnnotatedStructure& structure, const Sentence& sentence) {
  const PredicateInstance& pred = structure.predicate;
  const int n = sentence.size();
  if (pred.sentence_id != sentence.sentence_id) {
    invariant_failure(fmt::format(
        "predicate refers to sentence '{}' but is attached to '{}'",
        pred.sentence_id, sentence.sentence_id));
  }
  if (pred.range.start < 0 || pred.range.start > pred.range.end ||
      pred.range.end >= n) {
    invariant_failure(fmt::format(
        "sentence '{}': predicate range {} outside sentence of length {}",
        sentence.sentence_id, describe(pred.range), n));
  }
  if (pred.lemma.empty()) {
    invariant_failure(fmt::format("sentence '{}': predicate {} has no lemma",
                                  sentence.sentence_id,
                                  describe(pred.range)));
  }
  if (pred.sense && pred.sense->empty()) {
    invariant_failure(fmt::format(
        "sentence '{}': predicate {} has an empty sense label",
        sentence.sentence_id, describe(pred.range)));
  }
  const Argument* previous = nullptr;
  for (const Argument& arg : structure.arguments) {
    if (arg.span.start < 0 || arg.span.start > arg.span.end ||
        arg.span.end >= n) {
      invariant_failure(fmt::format(
          "sentence '{}': argument span {} outside sentence of length {}",
          sentence.sentence_id, describe(arg.span), n));
    }
    if (arg.role.empty()) {
      invariant_failure(fmt::format(
          "sentence '{}': argument {} has an empty role label",
          sentence.sentence_id, describe(arg.span)));
    }
    if (structure.formalism == Formalism::dependency &&
        arg.span.start != arg.span.end) {
      invariant_failure(fmt::format(
          "sentence '{}': dependency argument {} is wider than one token",
          sentence.sentence_id, describe(arg.span)));
    }
    if (arg.span.overlaps(pred.range)) {
      invariant_failure(fmt::format(
          "sentence '{}': argument {} overlaps predicate {}",
          sentence.sentence_id, describe(arg.span), describe(pred.range)));
    }
    if (previous != nullptr) {
      if (previous->span.overlaps(arg.span)) {
        invariant_failure(fmt::format(
            "sentence '{}': argument spans {} and {} overlap",
            sentence.sentence_id, describe(previous->span),
            describe(arg.span)));
      }
      if (arg.span.start < previous->span.start) {
        invariant_failure(fmt::format(
            "sentence '{}': argument {} is not sorted after {}",
            sentence.sentence_id, describe(arg.span),
            describe(previous->span)));
      }
    }
    previous = &arg;
  }
}

AnnotatedStructure dependency_to_span(const AnnotatedStructure& structure) {
  AnnotatedStructure out = structure;
  out.formalism = Formalism::span;
  return out;
}

Corpus::Corpus(std::vector<Sentence> sentences,
               std::vector<AnnotatedStructure> structures,
               std::string provenance)
    : sentences_(std::move(sentences)),
      structures_(std::move(structures)),
      provenance_(std::move(provenance)) {
  index_.reserve(sentences_.size());
  for (std::size_t i = 0; i < sentences_.size(); ++i) {
    validate(sentences_[i]);
    auto [it, inserted] = index_.emplace(sentences_[i].sentence_id, i);
    if (!inserted) {
      invariant_failure(fmt::format("duplicate sentence_id '{}'",
                                    sentences_[i].sentence_id));
    }
  }
  std::set<std::pair<std::string, TokenRange>> seen;
  for (const AnnotatedStructure& s : structures_) {
    auto it = index_.find(s.predicate.sentence_id);
    if (it == index_.end()) {
      invariant_failure(fmt::format(
          "structure refers to unknown sentence '{}'",
          s.predicate.sentence_id));
    }
    validate(s, sentences_[it->second]);
    if (!seen.emplace(s.predicate.sentence_id, s.predicate.range).second) {
      invariant_failure(fmt::format(
          "sentence '{}': two structures share predicate range {}",
          s.predicate.sentence_id, describe(s.predicate.range)));
    }
  }
  std::stable_sort(structures_.begin(), structures_.end(),
                   [this](const AnnotatedStructure& a,
                          const AnnotatedStructure& b) {
                     const std::size_t ia = index_.at(a.predicate.sentence_id);
                     const std::size_t ib = index_.at(b.predicate.sentence_id);
                     if (ia != ib) return ia < ib;
                     return a.predicate.range < b.predicate.range;
                   });
}

const Sentence* Corpus::find_sentence(std::string_view sentence_id) const {
  auto it = index_.find(std::string(sentence_id));
  return it == index_.end() ? nullptr : &sentences_[it->second];
}

const Sentence& Corpus::sentence_of(const AnnotatedStructure& structure) const {
  const Sentence* s = find_sentence(structure.predicate.sentence_id);
  if (s == nullptr) {
    throw Error(ErrorCategory::precondition,
                fmt::format("structure refers to unknown sentence '{}'",
                            structure.predicate.sentence_id));
  }
  return *s;
}

std::size_t Corpus::annotated_sentence_count() const {
  std::set<std::string_view> ids;
  for (const AnnotatedStructure& s : structures_) {
    ids.insert(s.predicate.sentence_id);
  }
  return ids.size();
}

}  // namespace dsrl
