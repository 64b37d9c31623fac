#include "dsrl/generators.hpp"

#include <algorithm>

#include "dsrl/error.hpp"
#include "dsrl/text.hpp"

namespace dsrl {

namespace {

constexpr std::string_view kUnknownDefinition = "unknown";

// (sense, count) pairs for a lemma, most frequent first, ties by sense.
std::vector<std::pair<std::string, std::size_t>> ranked_senses(
    const SenseCounts& counts, std::string_view lemma) {
  std::vector<std::pair<std::string, std::size_t>> out;
  const std::string key = text::to_lower(lemma);
  const auto& entries = counts.entries();
  for (auto it = entries.lower_bound({key, std::string()});
       it != entries.end() && it->first.first == key; ++it) {
    out.emplace_back(it->first.second, it->second);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  return out;
}

}  // namespace

void SenseCounts::add(std::string_view lemma, std::string_view sense,
                      std::size_t n) {
  if (n == 0) return;
  counts_[{text::to_lower(lemma), std::string(sense)}] += n;
}

std::size_t SenseCounts::count(std::string_view lemma,
                               std::string_view sense) const {
  auto it = counts_.find({text::to_lower(lemma), std::string(sense)});
  return it == counts_.end() ? 0 : it->second;
}

std::optional<std::string> SenseCounts::most_frequent(
    std::string_view lemma) const {
  auto ranked = ranked_senses(*this, lemma);
  if (ranked.empty()) return std::nullopt;
  return ranked.front().first;
}

std::size_t SenseCounts::total() const {
  std::size_t sum = 0;
  for (const auto& [key, n] : counts_) sum += n;
  return sum;
}

std::vector<DescriptionSequence> gold_oracle_generate(
    const Corpus& corpus, const Inventory& inv,
    std::optional<StylePrefix> prefix) {
  std::vector<DescriptionSequence> out;
  out.reserve(corpus.structures().size());
  for (const AnnotatedStructure& s : corpus.structures()) {
    out.push_back(encode_target(dependency_to_span(s), corpus.sentence_of(s),
                                inv, prefix));
  }
  return out;
}

DescriptionSequence mfs_baseline_generate(const Sentence& sentence,
                                          const PredicateInstance& pred,
                                          const SenseCounts& counts,
                                          const Inventory& inv) {
  std::string_view definition = kUnknownDefinition;
  const auto candidates = inv.candidate_senses(pred.lemma);
  if (!candidates.empty()) {
    const SenseEntry* chosen = nullptr;
    for (const auto& [sense, n] : ranked_senses(counts, pred.lemma)) {
      if ((chosen = inv.find(pred.lemma, sense)) != nullptr) break;
    }
    // Unseen lemma: candidates are sorted, so this is the smallest sense_id.
    if (chosen == nullptr) chosen = candidates.front();
    definition = chosen->definition;
  }

  DescriptionSequence seq;
  seq.surface = escape_text(pred.lemma) + ": " + escape_text(definition) + ".";
  for (const std::string& tok : sentence.tokens) {
    seq.surface += ' ';
    seq.surface += escape_text(tok);
  }
  return seq;
}

}  // namespace dsrl
