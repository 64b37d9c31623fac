#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "dsrl/corpus.hpp"
#include "dsrl/inventory.hpp"

namespace dsrl {

// Dataset overview. Averages are absent when there is nothing to average.
// Character lengths count Unicode code points.
struct StatsReport {
  std::size_t total_sentences = 0;
  std::size_t annotated_sentences = 0;
  std::optional<double> average_sentence_tokens;
  std::size_t total_predicates = 0;
  std::size_t distinct_senses = 0;
  std::size_t total_arguments = 0;
  std::size_t distinct_roles = 0;  // rendered labels, so R-A0 and A0 differ

  // Targets without a style prefix. Structures whose sense or roles do not
  // resolve in the inventory are skipped and counted separately.
  std::size_t encoded_targets = 0;
  std::size_t unencodable_structures = 0;
  std::optional<double> average_target_chars;

  // Definitions referenced by the corpus, deduplicated by text.
  std::size_t distinct_sense_definitions = 0;
  std::optional<double> average_sense_definition_chars;
  std::size_t distinct_role_definitions = 0;
  std::optional<double> average_role_definition_chars;

  bool operator==(const StatsReport&) const = default;
};

StatsReport corpus_stats(const Corpus& corpus, const Inventory& inv);

std::string render_stats_text(const StatsReport& report);
std::string render_stats_json(const StatsReport& report);

}  // namespace dsrl
