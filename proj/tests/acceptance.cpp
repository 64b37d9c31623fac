// Acceptance checks. Prints one PASS/FAIL line per criterion; exits nonzero
// if any fails.

#include <fmt/format.h>
#include <unistd.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dsrl/analysis.hpp"
#include "dsrl/cli.hpp"
#include "dsrl/codec.hpp"
#include "dsrl/error.hpp"
#include "dsrl/generators.hpp"
#include "dsrl/pipeline.hpp"
#include "dsrl/retrieval.hpp"
#include "dsrl/scorer.hpp"
#include "support/fuzz.hpp"
#include "support/oracles.hpp"

using namespace dsrl;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(std::string why) {
    if (ok) detail = std::move(why);
    ok = false;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Inventory fixture_inventory(const std::string& name) {
  return load_inventory(testing::fixture(name));
}

Outcome round_trip() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t checked = 0;
  for (Style style : {Style::propbank, Style::framenet}) {
    for (Formalism f : {Formalism::span, Formalism::dependency}) {
      for (std::uint64_t seed = 0; seed < 8; ++seed) {
        std::mt19937_64 rng(seed * 31 + static_cast<unsigned>(style) * 7 +
                            static_cast<unsigned>(f));
        testing::FuzzOptions opt;
        opt.style = style;
        opt.formalism = f;
        opt.sentences = 40;
        opt.tricky_definitions = 0.2;
        const auto world = testing::make_world(rng, opt);
        for (const auto& st : world.corpus.structures()) {
          const Sentence& s = world.corpus.sentence_of(st);
          const auto span = dependency_to_span(st);
          const StylePrefix prefix{style, f};
          const auto r = decode_description(
              encode_target(span, s, world.inventory, prefix), &s);
          ++checked;
          const SenseEntry* e =
              world.inventory.find(st.predicate.lemma, *st.predicate.sense);
          if (!r.issues.empty()) {
            o.fail(fmt::format("{} issues on {}", r.issues.size(), s.sentence_id));
          }
          if (r.structure.prefix != prefix ||
              r.structure.sense_definition != e->definition ||
              r.structure.arguments.size() != st.arguments.size()) {
            o.fail("header or argument count differs on " + s.sentence_id);
            continue;
          }
          for (std::size_t j = 0; j < st.arguments.size(); ++j) {
            const auto& a = r.structure.arguments[j];
            if (a.alignment != span.arguments[j].span ||
                a.link != st.arguments[j].link ||
                a.definition !=
                    *world.inventory.role_definition(*e, st.arguments[j].role)) {
              o.fail("argument mismatch on " + s.sentence_id);
            }
          }
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  if (checked < 1000) o.fail(fmt::format("only {} structures", checked));
  if (secs >= 10) o.fail(fmt::format("took {:.2f}s", secs));
  if (o.ok) o.detail = fmt::format("{} structures, {:.2f}s", checked, secs);
  return o;
}

Outcome end_to_end() {
  Outcome o;
  struct Case {
    std::string name;
    Corpus gold;
    Inventory inv;
  };
  std::vector<Case> cases;
  cases.push_back({"span_propbank",
                   parse_canonical(testing::fixture("span_propbank.jsonl")),
                   fixture_inventory("propbank_inventory.jsonl")});
  cases.push_back({"dependency.conll09",
                   parse_conll2009(testing::fixture("dependency.conll09")),
                   fixture_inventory("conll2009_inventory.jsonl")});
  cases.push_back({"framenet", parse_canonical(testing::fixture("framenet.jsonl")),
                   fixture_inventory("framenet_inventory.jsonl")});
  if (!cases[0].gold.find_sentence("mary")) o.fail("mary sentence missing");

  const BuiltinEmbedder emb;
  std::size_t runs = 0;
  for (const auto& c : cases) {
    const Formalism f = c.gold.structures().front().formalism;
    for (auto prefix : {std::optional<StylePrefix>{},
                        std::optional<StylePrefix>{StylePrefix{c.inv.style(), f}}}) {
      GenerateOptions gen;
      gen.prefix = prefix;
      for (ScorerKind kind : applicable_scorers(c.gold)) {
        const auto r = run_pipeline(c.gold, c.inv, gen, emb, kind);
        ++runs;
        const Fraction one{1, 1};
        std::vector<Counts> all = {r.report.total};
        for (const auto& [_, counts] : r.report.breakdown) all.push_back(counts);
        for (const Counts& k : all) {
          if (k.precision_exact() != one || k.recall_exact() != one ||
              k.f1_exact() != one) {
            o.fail(fmt::format("{} / {}: F1 {}", c.name, to_string(kind),
                               format_percent(r.report.total.f1())));
          }
        }
        for (const auto& d : r.decoded) {
          if (!d.issues.empty()) o.fail(c.name + ": decode issues");
        }
      }
    }
  }
  if (o.ok) o.detail = fmt::format("{} corpora, {} scorer runs", cases.size(), runs);
  return o;
}

Outcome decoder_totality() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  const Corpus c = parse_canonical(testing::fixture("span_propbank.jsonl"));
  const Inventory inv = fixture_inventory("propbank_inventory.jsonl");
  std::vector<std::string> seeds;
  for (const auto& d : gold_oracle_generate(c, inv)) seeds.push_back(d.surface);
  const auto prefixed = gold_oracle_generate(
      c, inv, StylePrefix{Style::propbank, Formalism::span});
  for (const auto& d : prefixed) seeds.push_back(d.surface);

  const int n = 100000;
  std::size_t issues = 0;
  for (int i = 0; i < n; ++i) {
    std::string in;
    if (i % 3 == 0) {
      in = testing::random_bytes(rng, 96);
    } else {
      in = seeds[rng() % seeds.size()];
      const int edits = 1 + static_cast<int>(rng() % 4);
      for (int k = 0; k < edits; ++k) in = testing::mutate(in, rng);
    }
    const Sentence* s = i % 2 ? &c.sentences()[rng() % c.sentences().size()] : nullptr;
    try {
      const auto r = decode_description(std::string_view(in), s);
      issues += r.issues.size();
      for (const auto& issue : r.issues) {
        if (issue.position > in.size()) o.fail("issue offset out of range");
      }
      for (const auto& a : r.structure.arguments) {
        if (a.offset >= in.size()) o.fail("argument offset out of range");
      }
    } catch (const std::exception& e) {
      o.fail(std::string("threw: ") + e.what());
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 60) o.fail(fmt::format("took {:.2f}s", secs));
  if (o.ok) o.detail = fmt::format("{} inputs, {} issues, {:.2f}s", n, issues, secs);
  return o;
}

Outcome retrieval_exactness() {
  Outcome o;
  const BuiltinEmbedder emb;
  std::size_t pairs = 0;
  auto expect = [&](const std::map<std::string, std::string>& table,
                    const std::string& where) {
    for (const auto& [label, def] : table) {
      const auto r = retrieve_label(table, def, emb);
      ++pairs;
      if (r.label != label || r.score != 1.0) {
        o.fail(fmt::format("{}: '{}' -> {} ({})", where, def,
                           r.label.value_or("none"), r.score));
      }
    }
  };
  for (ModifierSet set : {ModifierSet::conll2009, ModifierSet::conll2012}) {
    std::map<std::string, std::string> table;
    for (const auto& m : modifier_table(set)) {
      table.emplace(std::string(m.label), std::string(m.definition));
    }
    expect(table, std::string(to_string(set)));
  }
  for (const char* name : {"propbank_inventory.jsonl", "conll2009_inventory.jsonl",
                           "framenet_inventory.jsonl"}) {
    const Inventory inv = fixture_inventory(name);
    for (const SenseEntry* e : inv.entries()) {
      expect(inv.role_candidates(*e), fmt::format("{} {}", name, e->sense_id));
      std::map<std::string, std::string> senses;
      for (const SenseEntry* s : inv.candidate_senses(e->lemma)) {
        senses.emplace(s->sense_id, s->definition);
      }
      expect(senses, fmt::format("{} senses of {}", name, e->lemma));
    }
  }

  std::map<std::string, std::string> mods;
  for (const auto& m : modifier_table(ModifierSet::conll2009)) {
    mods.emplace(std::string(m.label), std::string(m.definition));
  }
  const auto r = retrieve_label(mods, "time duration", emb);
  const auto probe = testing::reference_embedding("time duration");
  std::string best;
  double best_score = -2;
  for (const auto& [label, def] : mods) {
    const double s = testing::brute_cosine(probe, testing::reference_embedding(def));
    if (s > best_score) {
      best_score = s;
      best = label;
    }
  }
  if (r.label != "AM-TMP" || best != "AM-TMP") {
    o.fail(fmt::format("'time duration' -> {}, oracle {}", r.label.value_or("none"),
                       best));
  }
  if (std::abs(r.score - best_score) > 1e-12) o.fail("oracle score differs");
  if (o.ok) o.detail = fmt::format("{} pairs, near miss score {:.3f}", pairs, r.score);
  return o;
}

Outcome scorer_oracle() {
  Outcome o;
  std::size_t comparisons = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    std::mt19937_64 rng(seed + 7000);
    testing::FuzzOptions opt;
    opt.formalism = seed % 2 ? Formalism::span : Formalism::dependency;
    opt.style = (seed / 2) % 2 ? Style::framenet : Style::propbank;
    opt.sentences = 8;
    const auto world = testing::make_world(rng, opt);
    const Corpus pred = testing::perturb(world.corpus, world.inventory, rng);
    for (ScorerKind kind : {ScorerKind::dependency, ScorerKind::span,
                            ScorerKind::framenet}) {
      if (kind == ScorerKind::dependency && opt.formalism != Formalism::dependency) {
        continue;
      }
      const Counts got = score(kind, world.corpus, pred).total;
      const auto want = testing::oracle_score(world.corpus, pred, kind);
      ++comparisons;
      if (got != Counts{want.correct, want.predicted, want.gold}) {
        o.fail(fmt::format("seed {} {}: {}/{}/{} vs oracle {}/{}/{}", seed,
                           to_string(kind), got.correct, got.predicted, got.gold,
                           want.correct, want.predicted, want.gold));
      }
      if (score(kind, world.corpus, world.corpus).total.f1_exact() != Fraction{1, 1}) {
        o.fail(fmt::format("seed {} {}: score(x,x) != 1", seed, to_string(kind)));
      }
      const Counts swapped = score(kind, pred, world.corpus).total;
      if (swapped.precision_exact() != got.recall_exact() ||
          swapped.recall_exact() != got.precision_exact()) {
        o.fail(fmt::format("seed {} {}: swap asymmetry", seed, to_string(kind)));
      }
    }
  }
  if (o.ok) o.detail = fmt::format("1000 pairs, {} comparisons", comparisons);
  return o;
}

AnnotatedStructure instance(const std::string& sid, const std::string& lemma,
                            std::optional<std::string> sense,
                            std::vector<Argument> args, TokenRange pred = {1, 1}) {
  AnnotatedStructure s;
  s.predicate = {sid, pred, lemma, std::move(sense), Style::propbank};
  s.arguments = std::move(args);
  return s;
}

Outcome partition_correctness() {
  Outcome o;
  SenseCounts train;
  train.add("give", "give.01", 3);
  train.add("give", "give.02", 1);
  train.add("run", "run.01", 2);
  train.add("run", "run.02", 2);

  std::vector<Sentence> sentences;
  for (int i = 1; i <= 6; ++i) {
    sentences.push_back({fmt::format("i{}", i), std::nullopt, {"w0", "w1", "w2", "w3"}});
  }
  const std::vector<Argument> args = {{{0, 0}, "A0"}, {{2, 3}, "A1"}};
  const Corpus gold(sentences,
                    {instance("i1", "give", "give.01", args),
                     instance("i2", "give", "give.02", args),
                     instance("i3", "give", "give.03", args),
                     instance("i4", "run", "run.01", args),
                     instance("i5", "run", "run.02", args),
                     instance("i6", "take", "take.01", args)});
  const Corpus pred(sentences,
                    {instance("i1", "give", "give.01", args),
                     instance("i1", "give", "give.02", {}, {0, 0}),
                     instance("i2", "give", "give.01", args),
                     instance("i3", "give", "give.01", {{{0, 0}, "A0"}}),
                     instance("i4", "run", "run.01", {{{0, 0}, "A1"}, {{2, 3}, "A1"}}),
                     instance("i5", "run", "run.02", {}),
                     instance("i6", "take", "take.01", args)});

  const std::vector<PartitionTag> want = {PartitionTag::mfs, PartitionTag::lfs,
                                          PartitionTag::unseen, PartitionTag::mfs,
                                          PartitionTag::lfs, PartitionTag::unseen};
  if (partition(gold, train) != want) o.fail("tags differ from the definitions");

  for (ScorerKind kind : {ScorerKind::span, ScorerKind::framenet}) {
    const PartitionTable t = partitioned_scores(gold, pred, train, kind);
    const ScoreReport global = score(kind, gold, pred);
    for (const char* items : {"sense", "argument"}) {
      Counts sum;
      std::size_t support = 0;
      double share = 0;
      for (const char* p : {"MFS", "LFS", "UNSEEN"}) {
        const PartitionRow* row = t.find(p, items);
        if (!row) {
          o.fail(fmt::format("missing row {} {}", p, items));
          continue;
        }
        sum += row->counts;
        support += row->support();
        share += row->share;
      }
      const Counts& all = t.find("ALL", items)->counts;
      if (sum != all || all != global.breakdown.at(items)) {
        o.fail(fmt::format("{} {}: partition counts do not sum to global",
                           to_string(kind), items));
      }
      if (support != all.gold || std::abs(share - 100.0) > 1e-9) {
        o.fail(fmt::format("{} {}: supports do not sum", to_string(kind), items));
      }
    }
    if (kind == ScorerKind::span) {
      const auto cell = [&](const char* p, const char* k) { return t.find(p, k)->counts; };
      if (cell("MFS", "sense") != Counts{2, 2, 2} ||
          cell("MFS", "argument") != Counts{3, 4, 4} ||
          cell("LFS", "sense") != Counts{1, 3, 2} ||
          cell("LFS", "argument") != Counts{2, 2, 4} ||
          cell("UNSEEN", "sense") != Counts{1, 2, 2} ||
          cell("UNSEEN", "argument") != Counts{3, 3, 4}) {
        o.fail("per-partition counts differ from the hand-computed values");
      }
      const std::string text = render_table_text(t);
      for (const char* needle : {"ALL", "MFS", "LFS", "UNSEEN", "2 (33.3%)"}) {
        if (text.find(needle) == std::string::npos) {
          o.fail(fmt::format("table text lacks '{}'", needle));
        }
      }
    }
  }
  if (o.ok) o.detail = "6 instances, span and framenet scorers";
  return o;
}

Outcome conll_identity() {
  Outcome o;
  const std::string doc = testing::fixture("dependency.conll09");
  const Corpus first = parse_conll2009(doc);
  const std::string exported = export_official(first, OfficialFormat::conll2009);
  const Corpus second = parse_conll2009(exported);
  if (!(first == second)) o.fail("corpus changed after export");
  if (export_official(second, OfficialFormat::conll2009) != exported) {
    o.fail("second export differs");
  }
  if (write_canonical(first) != write_canonical(second)) o.fail("canonical form differs");
  if (o.ok) {
    o.detail = fmt::format("{} sentences, {} predicates", first.sentences().size(),
                           first.structures().size());
  }
  return o;
}

struct CliRun {
  int status;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dsrl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Concatenated stdout, stderr and every file written under `dir`.
std::string snapshot(const CliRun& r, const fs::path& dir) {
  std::string out = fmt::format("{}\n{}\n{}\n", r.status, r.out, r.err);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) out += f.filename().string() + "\n" + slurp(f);
  return out;
}

Outcome cli_determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() /
                        fmt::format("dsrl_accept_{}", static_cast<long>(::getpid()));
  fs::remove_all(root);
  const fs::path in = root / "in";
  fs::create_directories(in);

  const std::string fix = DSRL_FIXTURE_DIR;
  const std::string span = fix + "/span_propbank.jsonl";
  const std::string pb = fix + "/propbank_inventory.jsonl";
  const std::string dep_inv = fix + "/conll2009_inventory.jsonl";
  const std::string gold = (in / "gold.jsonl").string();

  // Shared inputs for the later stages.
  cli({"convert", "--input", fix + "/dependency.conll09", "--output", gold});
  cli({"encode", "--input", span, "--inventory", pb, "--output",
       (in / "seq").string()});
  cli({"decode", "--input", (in / "seq.target").string(), "--corpus", span,
       "--output", (in / "parsed.jsonl").string()});

  using Args = std::vector<std::string>;
  const std::vector<std::pair<std::string, std::function<Args(const fs::path&)>>>
      commands = {
          {"convert", [&](const fs::path& d) {
             return Args{"convert", "--input", fix + "/dependency.conll09",
                         "--output", (d / "out.jsonl").string()};
           }},
          {"encode", [&](const fs::path& d) {
             return Args{"encode", "--input", gold, "--inventory", dep_inv,
                         "--style", "propbank", "--output", (d / "seq").string()};
           }},
          {"decode", [&](const fs::path& d) {
             return Args{"decode", "--input", (in / "seq.target").string(),
                         "--corpus", span, "--output", (d / "parsed.jsonl").string()};
           }},
          {"cast", [&](const fs::path& d) {
             return Args{"cast", "--input", (in / "parsed.jsonl").string(),
                         "--corpus", span, "--inventory", pb, "--output",
                         (d / "pred.jsonl").string()};
           }},
          {"score", [&](const fs::path&) {
             return Args{"score", "--gold", gold, "--input", gold, "--scorer", "dep"};
           }},
          {"partition", [&](const fs::path& d) {
             return Args{"partition", "--gold", span, "--train", span, "--input",
                         span, "--jsonl", (d / "table.jsonl").string()};
           }},
          {"stats", [&](const fs::path&) {
             return Args{"stats", "--input", span, "--inventory", pb, "--format",
                         "json"};
           }},
          {"downsample", [&](const fs::path& d) {
             return Args{"downsample", "--input", span, "--fraction", "0.6",
                         "--seed", "11", "--output", (d / "ds.jsonl").string()};
           }},
          {"pipeline", [&](const fs::path& d) {
             return Args{"pipeline", "--input", span, "--inventory", pb,
                         "--generator", "mfs", "--train", span, "--output",
                         (d / "pred.jsonl").string(), "--issues",
                         (d / "issues.jsonl").string()};
           }},
      };

  for (const auto& [name, make] : commands) {
    std::string snaps[2];
    for (int k = 0; k < 2; ++k) {
      const fs::path dir = root / fmt::format("{}_{}", name, k);
      fs::create_directories(dir);
      const CliRun r = cli(make(dir));
      if (r.status != 0) o.fail(fmt::format("{} exited {}: {}", name, r.status, r.err));
      snaps[k] = snapshot(r, dir);
      // Paths differ between the two directories; compare with them masked.
      std::string dirname = dir.string();
      for (std::size_t p; (p = snaps[k].find(dirname)) != std::string::npos;) {
        snaps[k].replace(p, dirname.size(), "<dir>");
      }
    }
    if (snaps[0] != snaps[1]) o.fail(name + " output differs between runs");
  }
  fs::remove_all(root);
  if (o.ok) o.detail = fmt::format("{} subcommands", commands.size());
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"round-trip identity", round_trip},
      {"end-to-end oracle", end_to_end},
      {"decoder totality", decoder_totality},
      {"retrieval exactness", retrieval_exactness},
      {"scorer oracle equivalence", scorer_oracle},
      {"partition correctness", partition_correctness},
      {"conll2009 conformance", conll_identity},
      {"cli determinism", cli_determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  " << name << "  (" << o.detail << ")"
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
