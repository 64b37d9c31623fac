#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dsrl/codec.hpp"
#include "dsrl/corpus.hpp"
#include "dsrl/generators.hpp"
#include "dsrl/inventory.hpp"
#include "dsrl/retrieval.hpp"
#include "dsrl/scorer.hpp"

namespace dsrl {

// Paired sequence files: line i of each belongs to structure i of the corpus.
struct SequencePair {
  std::vector<std::string> inputs;
  std::vector<std::string> targets;
};

// Dependency structures are converted to spans before encoding.
SequencePair encode_corpus(const Corpus& corpus, const Inventory& inv,
                           std::optional<StylePrefix> prefix = {});

// One decode per line. When `source` is given, line i is aligned against the
// sentence of structure i; a line count mismatch is a usage error.
std::vector<DecodeResult> decode_lines(std::span<const std::string> lines,
                                       const Corpus* source = nullptr);

// Predicted corpus over the sentences of `source`: structure i keeps the
// predicate position, lemma and style of source structure i, and takes its
// sense and roles from retrieval over parsed[i]. Arguments that did not align
// or cast, or that would overlap the predicate or an earlier argument, are
// dropped. For dependency sources each span is reduced to its last token.
Corpus cast_corpus(const Corpus& source,
                   std::span<const ParsedStructure> parsed,
                   const Inventory& inv, const Embedder& embedder);

enum class GeneratorKind { gold, mfs, remote };

std::string_view to_string(GeneratorKind kind);
std::optional<GeneratorKind> parse_generator_kind(std::string_view s);

struct GenerateOptions {
  GeneratorKind kind = GeneratorKind::gold;
  std::optional<StylePrefix> prefix;
  std::string endpoint;              // remote only
  const SenseCounts* counts = nullptr;  // mfs only; empty counts if null
};

// One description per structure, in corpus order.
std::vector<std::string> generate_descriptions(const Corpus& corpus,
                                               const Inventory& inv,
                                               const GenerateOptions& options);

// dep when every structure is a dependency structure, else span. An empty
// corpus gets span.
ScorerKind default_scorer(const Corpus& gold);

// All scorers that accept the corpus: dep, span and framenet for dependency
// corpora; span and framenet otherwise.
std::vector<ScorerKind> applicable_scorers(const Corpus& gold);

struct PipelineResult {
  std::vector<std::string> descriptions;
  std::vector<DecodeResult> decoded;
  Corpus predicted;
  ScoreReport report;
};

PipelineResult run_pipeline(const Corpus& gold, const Inventory& inv,
                            const GenerateOptions& generate,
                            const Embedder& embedder, ScorerKind scorer);

// Record-per-line serialization of decode output.
std::string parsed_to_jsonl(std::span<const DecodeResult> results);
std::vector<ParsedStructure> parsed_from_jsonl(std::string_view document);
// {"line": n, "kind": "...", "offset": n, "note": "..."}, lines 1-based.
std::string issues_to_jsonl(std::span<const DecodeResult> results);

// Splits on '\n'; a trailing newline does not add an empty line. A '\r'
// before the newline is removed.
std::vector<std::string> read_lines(std::string_view document);
std::string write_lines(std::span<const std::string> lines);

}  // namespace dsrl
