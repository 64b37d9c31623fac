#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dsrl/corpus.hpp"
#include "dsrl/generators.hpp"
#include "dsrl/scorer.hpp"

namespace dsrl {

enum class PartitionTag { mfs, lfs, unseen };

std::string_view to_string(PartitionTag tag);  // "MFS", "LFS", "UNSEEN"

// Occurrence counts over structures that carry a sense.
SenseCounts sense_counts(const Corpus& train);

// Tag for one (lemma, sense) against training counts.
PartitionTag classify(std::string_view lemma, std::string_view sense,
                      const SenseCounts& counts);

// One tag per structure of `eval`, in order. Throws Error(precondition) if a
// structure has no gold sense.
std::vector<PartitionTag> partition(const Corpus& eval,
                                    const SenseCounts& counts);

// Keeps round(fraction * N) of the N annotated sentences, chosen uniformly
// without replacement. The choice is a prefix of one seeded permutation, so
// smaller fractions give subsets of larger ones for the same seed.
// Unannotated sentences are kept. Order of the input is preserved.
Corpus downsample(const Corpus& train, double fraction, std::uint64_t seed);

struct PartitionRow {
  std::string partition;  // "ALL", "MFS", "LFS", "UNSEEN"
  std::string items;      // "sense" or "argument"
  Counts counts;
  double share = 0.0;  // support as a percentage of the ALL support

  std::size_t support() const { return counts.gold; }
};

struct PartitionTable {
  ScorerKind scorer = ScorerKind::span;
  std::vector<PartitionRow> rows;  // ALL, MFS, LFS, UNSEEN x sense, argument

  const PartitionRow* find(std::string_view partition,
                           std::string_view items) const;
};

// Runs the scorer once per partition. Predicted structures take the tag of
// the gold structure they match; unmatched ones are tagged by their own
// predicted (lemma, sense), and UNSEEN when they have no sense.
PartitionTable partitioned_scores(const Corpus& gold, const Corpus& pred,
                                  const SenseCounts& counts, ScorerKind kind);

std::string render_table_text(const PartitionTable& table);
// One JSON object per row.
std::string render_table_jsonl(const PartitionTable& table);

}  // namespace dsrl
