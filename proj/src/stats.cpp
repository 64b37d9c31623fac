#include "dsrl/stats.hpp"

#include <fmt/format.h>

#include <set>

#include <json.hpp>

#include "dsrl/codec.hpp"
#include "dsrl/error.hpp"
#include "dsrl/text.hpp"

namespace dsrl {

namespace {

std::optional<double> mean(double sum, std::size_t n) {
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

std::optional<double> mean_length(const std::set<std::string>& texts) {
  double sum = 0;
  for (const std::string& t : texts) sum += text::utf8_length(t);
  return mean(sum, texts.size());
}

std::string show(const std::optional<double>& v) {
  return v ? fmt::format("{:.1f}", *v) : "-";
}

}  // namespace

StatsReport corpus_stats(const Corpus& corpus, const Inventory& inv) {
  StatsReport r;
  r.total_sentences = corpus.sentences().size();
  r.annotated_sentences = corpus.annotated_sentence_count();
  double tokens = 0;
  for (const Sentence& s : corpus.sentences()) tokens += s.tokens.size();
  r.average_sentence_tokens = mean(tokens, r.total_sentences);

  std::set<std::string> senses, roles, sense_defs, role_defs;
  double target_chars = 0;
  for (const AnnotatedStructure& s : corpus.structures()) {
    ++r.total_predicates;
    if (s.predicate.sense) senses.insert(*s.predicate.sense);
    const SenseEntry* entry =
        s.predicate.sense ? inv.find(s.predicate.lemma, *s.predicate.sense)
                          : nullptr;
    if (entry != nullptr) sense_defs.insert(entry->definition);
    r.total_arguments += s.arguments.size();
    for (const Argument& a : s.arguments) {
      roles.insert(rendered_role(a));
      if (entry == nullptr) continue;
      if (auto def = inv.role_definition(*entry, a.role)) role_defs.insert(*def);
    }
    try {
      const DescriptionSequence seq =
          encode_target(dependency_to_span(s), corpus.sentence_of(s), inv);
      target_chars += text::utf8_length(seq.surface);
      ++r.encoded_targets;
    } catch (const Error&) {
      ++r.unencodable_structures;
    }
  }
  r.distinct_senses = senses.size();
  r.distinct_roles = roles.size();
  r.average_target_chars = mean(target_chars, r.encoded_targets);
  r.distinct_sense_definitions = sense_defs.size();
  r.average_sense_definition_chars = mean_length(sense_defs);
  r.distinct_role_definitions = role_defs.size();
  r.average_role_definition_chars = mean_length(role_defs);
  return r;
}

std::string render_stats_text(const StatsReport& r) {
  std::string out;
  auto line = [&](std::string_view name, const std::string& value) {
    out += fmt::format("{:<32}{:>12}\n", name, value);
  };
  line("sentences", std::to_string(r.total_sentences));
  line("annotated sentences", std::to_string(r.annotated_sentences));
  line("avg. sentence length (tokens)", show(r.average_sentence_tokens));
  line("predicates", std::to_string(r.total_predicates));
  line("senses", std::to_string(r.distinct_senses));
  line("arguments", std::to_string(r.total_arguments));
  line("roles", std::to_string(r.distinct_roles));
  line("encoded targets", std::to_string(r.encoded_targets));
  line("unencodable structures", std::to_string(r.unencodable_structures));
  line("avg. target length (chars)", show(r.average_target_chars));
  line("sense definitions", std::to_string(r.distinct_sense_definitions));
  line("avg. sense definition (chars)", show(r.average_sense_definition_chars));
  line("role definitions", std::to_string(r.distinct_role_definitions));
  line("avg. role definition (chars)", show(r.average_role_definition_chars));
  return out;
}

std::string render_stats_json(const StatsReport& r) {
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json j;
  j["total_sentences"] = r.total_sentences;
  j["annotated_sentences"] = r.annotated_sentences;
  j["average_sentence_tokens"] = opt(r.average_sentence_tokens);
  j["total_predicates"] = r.total_predicates;
  j["distinct_senses"] = r.distinct_senses;
  j["total_arguments"] = r.total_arguments;
  j["distinct_roles"] = r.distinct_roles;
  j["encoded_targets"] = r.encoded_targets;
  j["unencodable_structures"] = r.unencodable_structures;
  j["average_target_chars"] = opt(r.average_target_chars);
  j["distinct_sense_definitions"] = r.distinct_sense_definitions;
  j["average_sense_definition_chars"] = opt(r.average_sense_definition_chars);
  j["distinct_role_definitions"] = r.distinct_role_definitions;
  j["average_role_definition_chars"] = opt(r.average_role_definition_chars);
  return j.dump(2) + "\n";
}

}  // namespace dsrl
