#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "dsrl/corpus.hpp"

namespace dsrl {

// Exact non-negative rational, kept in lowest terms.
struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Fraction of(std::uint64_t num, std::uint64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Fraction&) const = default;
};

// Item counts with the evaluation-script conventions: precision is 1 when
// nothing was predicted, recall is 1 when nothing was expected, and F1 is the
// harmonic mean (0 when both are 0).
struct Counts {
  std::size_t correct = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;

  Fraction precision_exact() const;
  Fraction recall_exact() const;
  Fraction f1_exact() const;
  double precision() const { return precision_exact().value(); }
  double recall() const { return recall_exact().value(); }
  double f1() const { return f1_exact().value(); }

  Counts& operator+=(const Counts& o) {
    correct += o.correct;
    predicted += o.predicted;
    gold += o.gold;
    return *this;
  }
  bool operator==(const Counts&) const = default;
};

struct ScoreReport {
  Counts total;
  // "sense" and "argument" items separately; they sum to `total`.
  std::map<std::string, Counts> breakdown;

  double precision() const { return total.precision(); }
  double recall() const { return total.recall(); }
  double f1() const { return total.f1(); }
};

enum class ScorerKind { dependency, span, framenet };

std::string_view to_string(ScorerKind kind);
// Accepts "dep", "span", "framenet".
std::optional<ScorerKind> parse_scorer_kind(std::string_view s);

// Items are (sentence, predicate range, SENSE, label) plus one item per
// argument keyed by its head token (dependency) or exact span (span,
// framenet), labeled with the rendered role. Predictions are matched to gold
// by (sentence_id, predicate range). A predicted sentence missing from gold,
// or with different tokens, raises Error(alignment).
ScoreReport score_dependency(const Corpus& gold, const Corpus& pred);
ScoreReport score_span(const Corpus& gold, const Corpus& pred);
// Frame-gated exact match: an argument is only correct when its structure's
// frame is also correct. This approximates, without partial credit, the
// official FrameNet scoring script.
ScoreReport score_framenet(const Corpus& gold, const Corpus& pred);
ScoreReport score(ScorerKind kind, const Corpus& gold, const Corpus& pred);

// Percentage with one decimal, e.g. 0.6667 -> "66.7".
std::string format_percent(double fraction);

std::string render_report(const ScoreReport& report, ScorerKind kind);

enum class OfficialFormat { conll2009 };

// Column output consumable by the official evaluation scripts.
std::string export_official(const Corpus& corpus, OfficialFormat format);

}  // namespace dsrl
