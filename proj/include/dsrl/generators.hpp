#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dsrl/codec.hpp"
#include "dsrl/corpus.hpp"
#include "dsrl/inventory.hpp"

namespace dsrl {

// Training-set occurrence counts per (lemma, sense). Lemmas are stored
// lowercased, matching the inventory's case-insensitive lookup.
class SenseCounts {
 public:
  void add(std::string_view lemma, std::string_view sense, std::size_t n = 1);

  std::size_t count(std::string_view lemma, std::string_view sense) const;
  bool contains(std::string_view lemma, std::string_view sense) const {
    return count(lemma, sense) > 0;
  }
  // Highest count; ties go to the lexicographically smallest sense.
  std::optional<std::string> most_frequent(std::string_view lemma) const;
  std::size_t total() const;
  std::size_t size() const { return counts_.size(); }
  const std::map<std::pair<std::string, std::string>, std::size_t>& entries()
      const {
    return counts_;
  }

 private:
  std::map<std::pair<std::string, std::string>, std::size_t> counts_;
};

// Upper-bound generator: encode_target over every structure, in corpus order.
// Dependency structures are converted to spans first.
std::vector<DescriptionSequence> gold_oracle_generate(
    const Corpus& corpus, const Inventory& inv,
    std::optional<StylePrefix> prefix = {});

// Most-frequent-sense baseline: header only, no arguments.
DescriptionSequence mfs_baseline_generate(const Sentence& sentence,
                                          const PredicateInstance& pred,
                                          const SenseCounts& counts,
                                          const Inventory& inv);

// Client for `POST /generate`:
//   request  {"inputs": [str], "prefix": {"inventory", "formalism"} | null}
//   response {"outputs": [str]}
// Outputs are returned verbatim, in input order. Inputs are sent in batches
// of `batch_size`.
std::vector<std::string> remote_generate(std::string_view endpoint,
                                         std::span<const std::string> inputs,
                                         std::optional<StylePrefix> prefix,
                                         std::size_t batch_size = 32);

// `GET /health` -> {"status": "ok", "mode": str}. Returns the mode; any other
// status is Error(backend), a malformed body Error(protocol).
std::string service_health(std::string_view endpoint);

}  // namespace dsrl
