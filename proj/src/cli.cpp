#include "dsrl/cli.hpp"

#include <fmt/format.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "dsrl/analysis.hpp"
#include "dsrl/error.hpp"
#include "dsrl/pipeline.hpp"
#include "dsrl/stats.hpp"

namespace dsrl {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::io, fmt::format("cannot read '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCategory::io, fmt::format("cannot write '{}'", path));
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw Error(ErrorCategory::io, fmt::format("cannot write '{}'", path));
}

// Options shared by several subcommands. Unused fields stay at their
// defaults.
struct Config {
  std::string input;
  std::string output;
  std::string inventory;
  std::string corpus;
  std::string gold;
  std::string train;
  std::string issues;
  std::string jsonl;
  std::string style;
  std::string formalism;
  std::string embedder = "builtin";
  std::string endpoint;
  std::string generator = "gold";
  std::string scorer;
  std::string format = "text";
  std::uint64_t seed = 0;
  double fraction = 1.0;
};

class Runner {
 public:
  Runner(const Config& c, std::ostream& out) : c_(c), out_(out) {}

  void emit(std::string_view content) const {
    if (c_.output.empty() || c_.output == "-") {
      out_ << content;
    } else {
      write_file(c_.output, content);
    }
  }

  Corpus load_corpus(const std::string& path) const {
    return parse_canonical(read_file(path));
  }

  Inventory load_inv() const {
    if (c_.inventory.empty()) {
      throw Error(ErrorCategory::usage, "--inventory is required");
    }
    return load_inventory(read_file(c_.inventory));
  }

  std::string endpoint() const {
    if (!c_.endpoint.empty()) return c_.endpoint;
    const char* env = std::getenv("DSRL_ENDPOINT");
    return env ? env : "";
  }

  std::unique_ptr<Embedder> make_embedder() const {
    if (c_.embedder == "builtin") return std::make_unique<BuiltinEmbedder>();
    const std::string ep = endpoint();
    if (ep.empty()) {
      throw Error(ErrorCategory::usage,
                  "the remote embedder requires --endpoint or DSRL_ENDPOINT");
    }
    return std::make_unique<RemoteEmbedder>(ep);
  }

  // A prefix is attached when --style or --formalism is given; the missing
  // half comes from the inventory and the corpus.
  std::optional<StylePrefix> prefix(const Inventory& inv,
                                    const Corpus& corpus) const {
    if (c_.style.empty() && c_.formalism.empty()) return std::nullopt;
    StylePrefix p;
    p.inventory = c_.style.empty() ? inv.style() : *parse_style(c_.style);
    if (c_.formalism.empty()) {
      p.formalism = default_scorer(corpus) == ScorerKind::dependency
                        ? Formalism::dependency
                        : Formalism::span;
    } else {
      p.formalism = c_.formalism == "dep-srl" ? Formalism::dependency
                                              : Formalism::span;
    }
    return p;
  }

  ScorerKind scorer(const Corpus& gold) const {
    return c_.scorer.empty() ? default_scorer(gold)
                             : *parse_scorer_kind(c_.scorer);
  }

  void convert() const {
    emit(write_canonical(parse_conll2009(read_file(c_.input))));
  }

  void encode() const {
    if (c_.output.empty()) {
      throw Error(ErrorCategory::usage,
                  "encode writes <output>.source and <output>.target; "
                  "--output is required");
    }
    const Corpus corpus = load_corpus(c_.input);
    const Inventory inv = load_inv();
    const SequencePair seqs = encode_corpus(corpus, inv, prefix(inv, corpus));
    write_file(c_.output + ".source", write_lines(seqs.inputs));
    write_file(c_.output + ".target", write_lines(seqs.targets));
  }

  void decode() const {
    const std::vector<std::string> lines = read_lines(read_file(c_.input));
    std::optional<Corpus> source;
    if (!c_.corpus.empty()) source = load_corpus(c_.corpus);
    const std::vector<DecodeResult> results =
        decode_lines(lines, source ? &*source : nullptr);
    emit(parsed_to_jsonl(results));
    std::string issues_path = c_.issues;
    if (issues_path.empty() && !c_.output.empty() && c_.output != "-") {
      issues_path = c_.output + ".issues";
    }
    if (!issues_path.empty()) write_file(issues_path, issues_to_jsonl(results));
  }

  void cast() const {
    if (c_.corpus.empty()) {
      throw Error(ErrorCategory::usage, "cast requires --corpus");
    }
    const Corpus source = load_corpus(c_.corpus);
    const Inventory inv = load_inv();
    const std::vector<ParsedStructure> parsed =
        parsed_from_jsonl(read_file(c_.input));
    emit(write_canonical(cast_corpus(source, parsed, inv, *make_embedder())));
  }

  void score_cmd() const {
    const Corpus gold = load_corpus(require(c_.gold, "--gold"));
    const Corpus pred = load_corpus(c_.input);
    const ScorerKind kind = scorer(gold);
    emit(render_report(score(kind, gold, pred), kind));
  }

  void partition_cmd() const {
    const Corpus gold = load_corpus(require(c_.gold, "--gold"));
    const Corpus train = load_corpus(require(c_.train, "--train"));
    const Corpus pred = load_corpus(c_.input);
    const PartitionTable table =
        partitioned_scores(gold, pred, sense_counts(train), scorer(gold));
    emit(c_.format == "jsonl" ? render_table_jsonl(table)
                              : render_table_text(table));
    if (!c_.jsonl.empty()) write_file(c_.jsonl, render_table_jsonl(table));
  }

  void stats() const {
    const StatsReport r = corpus_stats(load_corpus(c_.input), load_inv());
    emit(c_.format == "json" ? render_stats_json(r) : render_stats_text(r));
  }

  void downsample_cmd() const {
    emit(write_canonical(downsample(load_corpus(c_.input), c_.fraction, c_.seed)));
  }

  void pipeline() const {
    const Corpus gold = load_corpus(c_.input);
    const Inventory inv = load_inv();
    GenerateOptions gen;
    gen.kind = *parse_generator_kind(c_.generator);
    gen.prefix = prefix(inv, gold);
    gen.endpoint = endpoint();
    std::optional<SenseCounts> counts;
    if (gen.kind == GeneratorKind::mfs) {
      counts = sense_counts(c_.train.empty() ? gold : load_corpus(c_.train));
      gen.counts = &*counts;
    }
    const ScorerKind kind = scorer(gold);
    const PipelineResult r =
        run_pipeline(gold, inv, gen, *make_embedder(), kind);
    out_ << render_report(r.report, kind);
    if (!c_.output.empty() && c_.output != "-") {
      write_file(c_.output, write_canonical(r.predicted));
    }
    if (!c_.issues.empty()) write_file(c_.issues, issues_to_jsonl(r.decoded));
  }

 private:
  static const std::string& require(const std::string& value,
                                    const char* flag) {
    if (value.empty()) {
      throw Error(ErrorCategory::usage, fmt::format("{} is required", flag));
    }
    return value;
  }

  const Config& c_;
  std::ostream& out_;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  Config c;
  CLI::App app{"Descriptive semantic role labeling toolkit", "dsrl"};
  app.require_subcommand(1);

  auto input = [&](CLI::App* sub, const char* what) {
    sub->add_option("--input", c.input, what)->required();
  };
  auto output = [&](CLI::App* sub) {
    sub->add_option("--output", c.output, "Output path, '-' for stdout");
  };
  auto inventory = [&](CLI::App* sub) {
    sub->add_option("--inventory", c.inventory, "Sense inventory file");
  };
  auto style_prefix = [&](CLI::App* sub) {
    sub->add_option("--style", c.style, "Inventory token of the prefix")
        ->check(CLI::IsMember({"propbank", "framenet"}));
    sub->add_option("--formalism", c.formalism, "Formalism token of the prefix")
        ->check(CLI::IsMember({"dep-srl", "span-srl"}));
  };
  auto embedder = [&](CLI::App* sub) {
    sub->add_option("--embedder", c.embedder, "builtin or remote")
        ->check(CLI::IsMember({"builtin", "remote"}));
    sub->add_option("--endpoint", c.endpoint,
                    "Service URL, defaults to $DSRL_ENDPOINT");
  };
  auto scorer = [&](CLI::App* sub) {
    sub->add_option("--scorer", c.scorer, "dep, span or framenet")
        ->check(CLI::IsMember({"dep", "span", "framenet"}));
  };

  CLI::App* convert = app.add_subcommand("convert", "CoNLL-2009 to canonical");
  input(convert, "CoNLL-2009 file");
  output(convert);

  CLI::App* encode =
      app.add_subcommand("encode", "Corpus to .source/.target sequence files");
  input(encode, "Canonical corpus");
  output(encode);
  inventory(encode);
  style_prefix(encode);

  CLI::App* decode =
      app.add_subcommand("decode", "Sequence file to parsed structures");
  input(decode, "One description per line");
  output(decode);
  decode->add_option("--corpus", c.corpus,
                     "Canonical corpus for token alignment");
  decode->add_option("--issues", c.issues,
                     "Issue log path, defaults to <output>.issues");

  CLI::App* cast = app.add_subcommand("cast", "Parsed structures to labels");
  input(cast, "Parsed structures from decode");
  output(cast);
  inventory(cast);
  embedder(cast);
  cast->add_option("--corpus", c.corpus, "Source corpus of the predicates");

  CLI::App* score = app.add_subcommand("score", "Score predictions");
  input(score, "Predicted canonical corpus");
  output(score);
  score->add_option("--gold", c.gold, "Gold canonical corpus");
  scorer(score);

  CLI::App* part = app.add_subcommand("partition", "MFS/LFS/UNSEEN table");
  input(part, "Predicted canonical corpus");
  output(part);
  part->add_option("--gold", c.gold, "Gold canonical corpus");
  part->add_option("--train", c.train, "Training corpus for sense counts");
  part->add_option("--format", c.format, "text or jsonl")
      ->check(CLI::IsMember({"text", "jsonl"}));
  part->add_option("--jsonl", c.jsonl, "Also write the table as JSONL here");
  scorer(part);

  CLI::App* stats = app.add_subcommand("stats", "Corpus statistics");
  input(stats, "Canonical corpus");
  output(stats);
  inventory(stats);
  stats->add_option("--format", c.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App* down = app.add_subcommand("downsample", "Sample annotated sentences");
  input(down, "Canonical corpus");
  output(down);
  down->add_option("--fraction", c.fraction, "Fraction in (0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  down->add_option("--seed", c.seed, "Sampling seed");

  CLI::App* pipe = app.add_subcommand(
      "pipeline", "Generate, decode, cast and score in one run");
  input(pipe, "Gold canonical corpus");
  pipe->add_option("--output", c.output, "Write the predicted corpus here");
  inventory(pipe);
  style_prefix(pipe);
  embedder(pipe);
  scorer(pipe);
  pipe->add_option("--generator", c.generator, "gold, mfs or remote")
      ->check(CLI::IsMember({"gold", "mfs", "remote"}));
  pipe->add_option("--train", c.train, "Training corpus for the mfs generator");
  pipe->add_option("--issues", c.issues, "Write the decode issue log here");
  pipe->add_option("--seed", c.seed, "Unused; accepted for uniform configs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << category_name(ErrorCategory::usage) << ": " << e.what()
        << "\n";
    return 2;
  }

  try {
    Runner run(c, out);
    if (*convert) run.convert();
    else if (*encode) run.encode();
    else if (*decode) run.decode();
    else if (*cast) run.cast();
    else if (*score) run.score_cmd();
    else if (*part) run.partition_cmd();
    else if (*stats) run.stats();
    else if (*down) run.downsample_cmd();
    else if (*pipe) run.pipeline();
  } catch (const Error& e) {
    std::string msg = e.what();
    for (char& ch : msg) {
      if (ch == '\n' || ch == '\r') ch = ' ';
    }
    err << "error: " << category_name(e.category()) << ": " << msg << "\n";
    return e.category() == ErrorCategory::usage ? 2 : 1;
  }
  return 0;
}

}  // namespace dsrl
