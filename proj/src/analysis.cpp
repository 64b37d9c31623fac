#include "dsrl/analysis.hpp"

#include <fmt/format.h>

#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include <json.hpp>

#include "dsrl/error.hpp"

namespace dsrl {

namespace {

constexpr PartitionTag kTags[] = {PartitionTag::mfs, PartitionTag::lfs,
                                  PartitionTag::unseen};

// Uniform integer in [0, bound) by rejection; independent of the standard
// library's distribution implementation.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

Corpus restrict(const Corpus& corpus, const std::vector<PartitionTag>& tags,
                PartitionTag keep) {
  std::vector<AnnotatedStructure> kept;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (tags[i] == keep) kept.push_back(corpus.structures()[i]);
  }
  return Corpus(corpus.sentences(), std::move(kept));
}

}  // namespace

std::string_view to_string(PartitionTag tag) {
  switch (tag) {
    case PartitionTag::mfs: return "MFS";
    case PartitionTag::lfs: return "LFS";
    case PartitionTag::unseen: return "UNSEEN";
  }
  return "UNSEEN";
}

SenseCounts sense_counts(const Corpus& train) {
  SenseCounts counts;
  for (const AnnotatedStructure& s : train.structures()) {
    if (s.predicate.sense) counts.add(s.predicate.lemma, *s.predicate.sense);
  }
  return counts;
}

PartitionTag classify(std::string_view lemma, std::string_view sense,
                      const SenseCounts& counts) {
  if (!counts.contains(lemma, sense)) return PartitionTag::unseen;
  return counts.most_frequent(lemma) == sense ? PartitionTag::mfs
                                              : PartitionTag::lfs;
}

std::vector<PartitionTag> partition(const Corpus& eval,
                                    const SenseCounts& counts) {
  std::vector<PartitionTag> tags;
  tags.reserve(eval.structures().size());
  for (const AnnotatedStructure& s : eval.structures()) {
    if (!s.predicate.sense) {
      throw Error(ErrorCategory::precondition,
                  fmt::format("partition: predicate '{}' at {}..{} in sentence "
                              "'{}' has no gold sense",
                              s.predicate.lemma, s.predicate.range.start,
                              s.predicate.range.end, s.predicate.sentence_id));
    }
    tags.push_back(classify(s.predicate.lemma, *s.predicate.sense, counts));
  }
  return tags;
}

Corpus downsample(const Corpus& train, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorCategory::precondition,
                fmt::format("fraction must be in (0, 1], got {}", fraction));
  }
  std::set<std::string_view> annotated;
  for (const AnnotatedStructure& s : train.structures()) {
    annotated.insert(s.predicate.sentence_id);
  }
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < train.sentences().size(); ++i) {
    if (annotated.count(train.sentences()[i].sentence_id)) order.push_back(i);
  }

  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[bounded(rng, i)]);
  }
  const auto keep_n = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(order.size())));
  std::set<std::string_view> keep;
  for (std::size_t i = 0; i < keep_n; ++i) {
    keep.insert(train.sentences()[order[i]].sentence_id);
  }

  std::vector<Sentence> sentences;
  for (const Sentence& s : train.sentences()) {
    if (!annotated.count(s.sentence_id) || keep.count(s.sentence_id)) {
      sentences.push_back(s);
    }
  }
  std::vector<AnnotatedStructure> structures;
  for (const AnnotatedStructure& s : train.structures()) {
    if (keep.count(s.predicate.sentence_id)) structures.push_back(s);
  }
  return Corpus(std::move(sentences), std::move(structures),
                fmt::format("downsample fraction={} seed={} of {}", fraction,
                            seed, train.provenance()));
}

const PartitionRow* PartitionTable::find(std::string_view partition,
                                         std::string_view items) const {
  for (const PartitionRow& row : rows) {
    if (row.partition == partition && row.items == items) return &row;
  }
  return nullptr;
}

PartitionTable partitioned_scores(const Corpus& gold, const Corpus& pred,
                                  const SenseCounts& counts, ScorerKind kind) {
  const ScoreReport all = score(kind, gold, pred);
  const std::vector<PartitionTag> gold_tags = partition(gold, counts);

  std::map<std::pair<std::string_view, TokenRange>, PartitionTag> by_key;
  for (std::size_t i = 0; i < gold_tags.size(); ++i) {
    const PredicateInstance& p = gold.structures()[i].predicate;
    by_key.emplace(std::pair{std::string_view(p.sentence_id), p.range},
                   gold_tags[i]);
  }
  std::vector<PartitionTag> pred_tags;
  for (const AnnotatedStructure& s : pred.structures()) {
    const PredicateInstance& p = s.predicate;
    auto it = by_key.find({p.sentence_id, p.range});
    if (it != by_key.end()) {
      pred_tags.push_back(it->second);
    } else if (p.sense) {
      pred_tags.push_back(classify(p.lemma, *p.sense, counts));
    } else {
      pred_tags.push_back(PartitionTag::unseen);
    }
  }

  PartitionTable table;
  table.scorer = kind;
  auto add = [&](std::string_view name, const ScoreReport& report) {
    for (const char* items : {"sense", "argument"}) {
      PartitionRow row;
      row.partition = std::string(name);
      row.items = items;
      row.counts = report.breakdown.at(items);
      const std::size_t total = all.breakdown.at(items).gold;
      row.share = total == 0 ? 0.0
                             : 100.0 * static_cast<double>(row.counts.gold) /
                                   static_cast<double>(total);
      table.rows.push_back(std::move(row));
    }
  };
  add("ALL", all);
  for (PartitionTag tag : kTags) {
    add(to_string(tag), score(kind, restrict(gold, gold_tags, tag),
                              restrict(pred, pred_tags, tag)));
  }
  return table;
}

std::string render_table_text(const PartitionTable& table) {
  std::string out = fmt::format("scorer: {}\n", to_string(table.scorer));
  out += fmt::format("{:<8}{:>10}{:>18}{:>12}{:>18}\n", "", "sense F1",
                     "support", "arg F1", "support");
  for (std::string_view name : {"ALL", "MFS", "LFS", "UNSEEN"}) {
    const PartitionRow* s = table.find(name, "sense");
    const PartitionRow* a = table.find(name, "argument");
    if (s == nullptr || a == nullptr) continue;
    auto support = [](const PartitionRow& r) {
      return fmt::format("{} ({}%)", r.support(), fmt::format("{:.1f}", r.share));
    };
    out += fmt::format("{:<8}{:>10}{:>18}{:>12}{:>18}\n", name,
                       format_percent(s->counts.f1()), support(*s),
                       format_percent(a->counts.f1()), support(*a));
  }
  return out;
}

std::string render_table_jsonl(const PartitionTable& table) {
  std::string out;
  for (const PartitionRow& row : table.rows) {
    nlohmann::ordered_json j;
    j["scorer"] = std::string(to_string(table.scorer));
    j["partition"] = row.partition;
    j["items"] = row.items;
    j["correct"] = row.counts.correct;
    j["predicted"] = row.counts.predicted;
    j["gold"] = row.counts.gold;
    j["precision"] = row.counts.precision();
    j["recall"] = row.counts.recall();
    j["f1"] = row.counts.f1();
    j["support"] = row.support();
    j["share"] = row.share;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace dsrl
