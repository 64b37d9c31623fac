#include "dsrl/pipeline.hpp"

#include <fmt/format.h>

#include <algorithm>

#include <json.hpp>

#include "dsrl/error.hpp"

namespace dsrl {

namespace {

using json = nlohmann::ordered_json;

json prefix_to_json(const std::optional<StylePrefix>& prefix) {
  if (!prefix) return nullptr;
  return {{"inventory", std::string(to_string(prefix->inventory))},
          {"formalism", std::string(to_string(prefix->formalism))}};
}

std::optional<StylePrefix> prefix_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  StylePrefix p;
  auto style = parse_style(j.at("inventory").get<std::string>());
  auto formalism = parse_formalism(j.at("formalism").get<std::string>());
  if (!style || !formalism) throw std::invalid_argument("bad prefix");
  p.inventory = *style;
  p.formalism = *formalism;
  return p;
}

}  // namespace

SequencePair encode_corpus(const Corpus& corpus, const Inventory& inv,
                           std::optional<StylePrefix> prefix) {
  SequencePair out;
  for (const AnnotatedStructure& s : corpus.structures()) {
    const Sentence& sentence = corpus.sentence_of(s);
    out.inputs.push_back(encode_input(sentence, s.predicate));
    out.targets.push_back(
        encode_target(dependency_to_span(s), sentence, inv, prefix).surface);
  }
  return out;
}

std::vector<DecodeResult> decode_lines(std::span<const std::string> lines,
                                       const Corpus* source) {
  if (source != nullptr && source->structures().size() != lines.size()) {
    throw Error(ErrorCategory::usage,
                fmt::format("{} sequences for {} structures in the corpus",
                            lines.size(), source->structures().size()));
  }
  std::vector<DecodeResult> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Sentence* sentence =
        source ? &source->sentence_of(source->structures()[i]) : nullptr;
    out.push_back(decode_description(lines[i], sentence));
  }
  return out;
}

Corpus cast_corpus(const Corpus& source,
                   std::span<const ParsedStructure> parsed,
                   const Inventory& inv, const Embedder& embedder) {
  if (source.structures().size() != parsed.size()) {
    throw Error(ErrorCategory::usage,
                fmt::format("{} parsed structures for {} structures in the "
                            "corpus",
                            parsed.size(), source.structures().size()));
  }
  std::vector<AnnotatedStructure> structures;
  structures.reserve(parsed.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    const AnnotatedStructure& src = source.structures()[i];
    const CastResult cast =
        cast_structure(parsed[i], src.predicate.lemma, inv, embedder);

    AnnotatedStructure out;
    out.predicate = src.predicate;
    out.predicate.sense = cast.sense;
    out.formalism = src.formalism;
    for (std::size_t j = 0; j < parsed[i].arguments.size(); ++j) {
      const ParsedArgument& a = parsed[i].arguments[j];
      if (!a.alignment || !cast.roles[j]) continue;
      TokenRange span = *a.alignment;
      if (out.formalism == Formalism::dependency) span.start = span.end;
      out.arguments.push_back({span, *cast.roles[j], a.link});
    }
    std::stable_sort(
        out.arguments.begin(), out.arguments.end(),
        [](const Argument& x, const Argument& y) { return x.span < y.span; });
    std::vector<Argument> kept;
    for (Argument& a : out.arguments) {
      if (a.span.overlaps(out.predicate.range)) continue;
      if (!kept.empty() && kept.back().span.overlaps(a.span)) continue;
      kept.push_back(std::move(a));
    }
    out.arguments = std::move(kept);
    structures.push_back(std::move(out));
  }
  return Corpus(source.sentences(), std::move(structures),
                "cast of " + source.provenance());
}

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::gold: return "gold";
    case GeneratorKind::mfs: return "mfs";
    case GeneratorKind::remote: return "remote";
  }
  return "gold";
}

std::optional<GeneratorKind> parse_generator_kind(std::string_view s) {
  if (s == "gold") return GeneratorKind::gold;
  if (s == "mfs") return GeneratorKind::mfs;
  if (s == "remote") return GeneratorKind::remote;
  return std::nullopt;
}

std::vector<std::string> generate_descriptions(const Corpus& corpus,
                                               const Inventory& inv,
                                               const GenerateOptions& options) {
  std::vector<std::string> out;
  switch (options.kind) {
    case GeneratorKind::gold:
      for (DescriptionSequence& d :
           gold_oracle_generate(corpus, inv, options.prefix)) {
        out.push_back(std::move(d.surface));
      }
      break;
    case GeneratorKind::mfs: {
      const SenseCounts empty;
      const SenseCounts& counts = options.counts ? *options.counts : empty;
      for (const AnnotatedStructure& s : corpus.structures()) {
        out.push_back(mfs_baseline_generate(corpus.sentence_of(s), s.predicate,
                                            counts, inv)
                          .surface);
      }
      break;
    }
    case GeneratorKind::remote: {
      if (options.endpoint.empty()) {
        throw Error(ErrorCategory::usage,
                    "the remote generator requires an endpoint");
      }
      std::vector<std::string> inputs;
      for (const AnnotatedStructure& s : corpus.structures()) {
        inputs.push_back(encode_input(corpus.sentence_of(s), s.predicate));
      }
      out = remote_generate(options.endpoint, inputs, options.prefix);
      break;
    }
  }
  return out;
}

ScorerKind default_scorer(const Corpus& gold) {
  const auto& s = gold.structures();
  const bool dependency =
      !s.empty() && std::all_of(s.begin(), s.end(), [](const auto& x) {
        return x.formalism == Formalism::dependency;
      });
  return dependency ? ScorerKind::dependency : ScorerKind::span;
}

std::vector<ScorerKind> applicable_scorers(const Corpus& gold) {
  if (default_scorer(gold) == ScorerKind::dependency) {
    return {ScorerKind::dependency, ScorerKind::span, ScorerKind::framenet};
  }
  return {ScorerKind::span, ScorerKind::framenet};
}

PipelineResult run_pipeline(const Corpus& gold, const Inventory& inv,
                            const GenerateOptions& generate,
                            const Embedder& embedder, ScorerKind scorer) {
  PipelineResult r;
  r.descriptions = generate_descriptions(gold, inv, generate);
  r.decoded = decode_lines(r.descriptions, &gold);
  std::vector<ParsedStructure> parsed;
  parsed.reserve(r.decoded.size());
  for (const DecodeResult& d : r.decoded) parsed.push_back(d.structure);
  r.predicted = cast_corpus(gold, parsed, inv, embedder);
  r.report = score(scorer, gold, r.predicted);
  return r;
}

std::string parsed_to_jsonl(std::span<const DecodeResult> results) {
  std::string out;
  for (const DecodeResult& r : results) {
    const ParsedStructure& p = r.structure;
    json j;
    j["prefix"] = prefix_to_json(p.prefix);
    j["predicate_surface"] = p.predicate_surface;
    j["sense_definition"] = p.sense_definition;
    j["arguments"] = json::array();
    for (const ParsedArgument& a : p.arguments) {
      json arg;
      arg["text"] = a.text;
      arg["definition"] = a.definition;
      arg["link"] = std::string(to_string(a.link));
      arg["offset"] = a.offset;
      arg["alignment"] = a.alignment ? json::array({a.alignment->start,
                                                    a.alignment->end})
                                     : json(nullptr);
      j["arguments"].push_back(std::move(arg));
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<ParsedStructure> parsed_from_jsonl(std::string_view document) {
  std::vector<ParsedStructure> out;
  const std::vector<std::string> lines = read_lines(document);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      const json j = json::parse(lines[i]);
      ParsedStructure p;
      p.prefix = prefix_from_json(j.at("prefix"));
      p.predicate_surface = j.at("predicate_surface").get<std::string>();
      p.sense_definition = j.at("sense_definition").get<std::string>();
      for (const json& a : j.at("arguments")) {
        ParsedArgument arg;
        arg.text = a.at("text").get<std::string>();
        arg.definition = a.at("definition").get<std::string>();
        auto link = parse_link(a.at("link").get<std::string>());
        if (!link) throw std::invalid_argument("bad link");
        arg.link = *link;
        arg.offset = a.at("offset").get<std::size_t>();
        const json& al = a.at("alignment");
        if (!al.is_null()) {
          arg.alignment = TokenRange{al.at(0).get<int>(), al.at(1).get<int>()};
        }
        p.arguments.push_back(std::move(arg));
      }
      out.push_back(std::move(p));
    } catch (const std::exception& e) {
      throw Error(ErrorCategory::format,
                  fmt::format("parsed record {}: {}", i + 1, e.what()));
    }
  }
  return out;
}

std::string issues_to_jsonl(std::span<const DecodeResult> results) {
  std::string out;
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (const DecodeIssue& issue : results[i].issues) {
      json j;
      j["line"] = i + 1;
      j["kind"] = std::string(to_string(issue.kind));
      j["offset"] = issue.position;
      j["note"] = issue.note;
      out += j.dump();
      out += '\n';
    }
  }
  return out;
}

std::vector<std::string> read_lines(std::string_view document) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < document.size()) {
    std::size_t nl = document.find('\n', pos);
    if (nl == std::string_view::npos) nl = document.size();
    std::string_view line = document.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    pos = nl + 1;
  }
  return lines;
}

std::string write_lines(std::span<const std::string> lines) {
  std::string out;
  for (const std::string& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

}  // namespace dsrl
