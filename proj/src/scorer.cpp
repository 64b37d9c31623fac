#include "dsrl/scorer.hpp"

#include <fmt/format.h>

#include <map>
#include <numeric>
#include <tuple>

#include "dsrl/error.hpp"

namespace dsrl {

namespace {

using PredicateKey = std::pair<std::string_view, TokenRange>;

void check_alignment(const Corpus& gold, const Corpus& pred) {
  for (const Sentence& s : pred.sentences()) {
    const Sentence* g = gold.find_sentence(s.sentence_id);
    if (g == nullptr) {
      throw Error(ErrorCategory::alignment,
                  fmt::format("predicted sentence '{}' is not in the gold "
                              "corpus",
                              s.sentence_id));
    }
    if (g->tokens != s.tokens) {
      throw Error(ErrorCategory::alignment,
                  fmt::format("sentence '{}' has different tokens in gold and "
                              "predictions",
                              s.sentence_id));
    }
  }
}

void require_dependency(const Corpus& corpus, const char* which) {
  for (const AnnotatedStructure& s : corpus.structures()) {
    if (s.formalism != Formalism::dependency) {
      throw Error(ErrorCategory::precondition,
                  fmt::format("dependency scorer: {} sentence '{}' has a span "
                              "structure",
                              which, s.predicate.sentence_id));
    }
  }
}

ScoreReport run(const Corpus& gold, const Corpus& pred, ScorerKind kind) {
  check_alignment(gold, pred);
  if (kind == ScorerKind::dependency) {
    require_dependency(gold, "gold");
    require_dependency(pred, "predicted");
  }

  Counts sense, argument;
  std::map<PredicateKey, const AnnotatedStructure*> gold_index;
  for (const AnnotatedStructure& s : gold.structures()) {
    gold_index.emplace(PredicateKey{s.predicate.sentence_id, s.predicate.range},
                       &s);
    if (s.predicate.sense) ++sense.gold;
    argument.gold += s.arguments.size();
  }

  for (const AnnotatedStructure& p : pred.structures()) {
    if (p.predicate.sense) ++sense.predicted;
    argument.predicted += p.arguments.size();

    auto it = gold_index.find({p.predicate.sentence_id, p.predicate.range});
    if (it == gold_index.end()) continue;
    const AnnotatedStructure& g = *it->second;

    const bool sense_match = p.predicate.sense && g.predicate.sense &&
                             *p.predicate.sense == *g.predicate.sense;
    if (sense_match) ++sense.correct;
    if (kind == ScorerKind::framenet && !sense_match) continue;

    // Arguments are sorted and disjoint, so a span (or head) identifies at
    // most one argument on each side.
    std::map<TokenRange, std::string> gold_args;
    for (const Argument& a : g.arguments) {
      TokenRange key = a.span;
      if (kind == ScorerKind::dependency) key.end = key.start;
      gold_args.emplace(key, rendered_role(a));
    }
    for (const Argument& a : p.arguments) {
      TokenRange key = a.span;
      if (kind == ScorerKind::dependency) key.end = key.start;
      auto found = gold_args.find(key);
      if (found != gold_args.end() && found->second == rendered_role(a)) {
        ++argument.correct;
      }
    }
  }

  ScoreReport report;
  report.breakdown["sense"] = sense;
  report.breakdown["argument"] = argument;
  report.total = sense;
  report.total += argument;
  return report;
}

}  // namespace

Fraction Fraction::of(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw Error(ErrorCategory::contract, "zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  return g == 0 ? Fraction{0, 1} : Fraction{num / g, den / g};
}

Fraction Counts::precision_exact() const {
  return predicted == 0 ? Fraction{1, 1} : Fraction::of(correct, predicted);
}

Fraction Counts::recall_exact() const {
  return gold == 0 ? Fraction{1, 1} : Fraction::of(correct, gold);
}

Fraction Counts::f1_exact() const {
  const Fraction p = precision_exact();
  const Fraction r = recall_exact();
  if (p.num == 0 && r.num == 0) return {0, 1};
  // 2PR / (P + R) with P = a/b, R = c/d  ->  2ac / (ad + cb)
  return Fraction::of(2 * p.num * r.num, p.num * r.den + r.num * p.den);
}

std::string_view to_string(ScorerKind kind) {
  switch (kind) {
    case ScorerKind::dependency: return "dep";
    case ScorerKind::span: return "span";
    case ScorerKind::framenet: return "framenet";
  }
  return "span";
}

std::optional<ScorerKind> parse_scorer_kind(std::string_view s) {
  if (s == "dep") return ScorerKind::dependency;
  if (s == "span") return ScorerKind::span;
  if (s == "framenet") return ScorerKind::framenet;
  return std::nullopt;
}

ScoreReport score_dependency(const Corpus& gold, const Corpus& pred) {
  return run(gold, pred, ScorerKind::dependency);
}

ScoreReport score_span(const Corpus& gold, const Corpus& pred) {
  return run(gold, pred, ScorerKind::span);
}

ScoreReport score_framenet(const Corpus& gold, const Corpus& pred) {
  return run(gold, pred, ScorerKind::framenet);
}

ScoreReport score(ScorerKind kind, const Corpus& gold, const Corpus& pred) {
  return run(gold, pred, kind);
}

std::string format_percent(double fraction) {
  return fmt::format("{:.1f}", fraction * 100.0);
}

std::string render_report(const ScoreReport& report, ScorerKind kind) {
  std::string out = fmt::format("scorer: {}\n", to_string(kind));
  out += fmt::format("{:<10}{:>10}{:>10}{:>10}{:>8}{:>8}{:>8}\n", "items",
                     "correct", "predicted", "gold", "P", "R", "F1");
  auto row = [&](std::string_view name, const Counts& c) {
    out += fmt::format("{:<10}{:>10}{:>10}{:>10}{:>8}{:>8}{:>8}\n", name,
                       c.correct, c.predicted, c.gold,
                       format_percent(c.precision()),
                       format_percent(c.recall()), format_percent(c.f1()));
  };
  for (const auto& [name, c] : report.breakdown) row(name, c);
  row("all", report.total);
  return out;
}

std::string export_official(const Corpus& corpus, OfficialFormat format) {
  switch (format) {
    case OfficialFormat::conll2009: return write_conll2009(corpus);
  }
  return {};
}

}  // namespace dsrl
