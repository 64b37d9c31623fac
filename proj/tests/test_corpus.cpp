#include <doctest.h>
#include <fmt/format.h>

#include <random>

#include "dsrl/corpus.hpp"
#include "dsrl/error.hpp"
#include "dsrl/markers.hpp"
#include "support/fuzz.hpp"
#include "support/oracles.hpp"

using namespace dsrl;

namespace {

Sentence sent(std::string id, std::vector<std::string> toks) {
  return Sentence{std::move(id), std::nullopt, std::move(toks)};
}

AnnotatedStructure structure(std::string sid, TokenRange pred,
                             std::vector<Argument> args,
                             Formalism f = Formalism::span) {
  AnnotatedStructure s;
  s.predicate = {std::move(sid), pred, "give", std::string("give.01"),
                 Style::propbank};
  s.arguments = std::move(args);
  s.formalism = f;
  return s;
}

ErrorCategory category_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.category();
  }
  FAIL("no error raised");
  return ErrorCategory::usage;
}

// Independent emitter for the canonical format: builds each line by hand.
std::string emit_record(const Sentence& s,
                        const std::vector<AnnotatedStructure>& structs) {
  auto q = [](const std::string& x) {
    std::string o = "\"";
    for (char c : x) {
      if (c == '"' || c == '\\') o += '\\';
      o += c;
    }
    return o + "\"";
  };
  std::string out = "{\"doc_id\":" + q(s.doc_id.value_or("")) +
                    ",\"sentence_id\":" + q(s.sentence_id) + ",\"tokens\":[";
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    out += (i ? "," : "") + q(s.tokens[i]);
  }
  out += "],\"structures\":[";
  for (std::size_t k = 0; k < structs.size(); ++k) {
    const auto& st = structs[k];
    const auto& p = st.predicate;
    out += k ? "," : "";
    out += fmt::format(
        "{{\"predicate\":{{\"start\":{},\"end\":{},\"lemma\":{},\"sense\":{},"
        "\"style\":\"{}\"}},\"formalism\":\"{}\",\"arguments\":[",
        p.range.start, p.range.end, q(p.lemma), p.sense ? q(*p.sense) : "null",
        p.style == Style::propbank ? "propbank" : "framenet",
        st.formalism == Formalism::span ? "span" : "dependency");
    for (std::size_t j = 0; j < st.arguments.size(); ++j) {
      const auto& a = st.arguments[j];
      const char* link = a.link == Link::none           ? "none"
                         : a.link == Link::reference_to ? "reference_to"
                                                        : "continuation_of";
      out += fmt::format("{}{{\"start\":{},\"end\":{},\"role\":{},\"link\":\"{}\"}}",
                         j ? "," : "", a.span.start, a.span.end, q(a.role), link);
    }
    out += "]}";
  }
  return out + "]}\n";
}

}  // namespace

TEST_CASE("token ranges are inclusive") {
  CHECK(TokenRange{3, 3}.width() == 1);
  CHECK(TokenRange{0, 2}.overlaps({2, 4}));
  CHECK_FALSE(TokenRange{0, 1}.overlaps({2, 4}));
}

TEST_CASE("rendered roles fold link flags into prefixes") {
  CHECK(rendered_role({{0, 0}, "A1", Link::reference_to}) == "R-A1");
  CHECK(rendered_role({{0, 0}, "A0", Link::continuation_of}) == "C-A0");
  CHECK(rendered_role({{0, 0}, "AM-TMP", Link::none}) == "AM-TMP");
  const Argument a = argument_from_rendered({2, 2}, "R-AM-TMP");
  CHECK(a.role == "AM-TMP");
  CHECK(a.link == Link::reference_to);
  CHECK(argument_from_rendered({1, 1}, "C-A0").link == Link::continuation_of);
  CHECK(argument_from_rendered({1, 1}, "A0").link == Link::none);
}

TEST_CASE("corpus construction checks invariants") {
  const Sentence s = sent("s1", {"Mary", "gave", "the", "book"});

  SUBCASE("valid corpus") {
    Corpus c({s}, {structure("s1", {1, 1}, {{{0, 0}, "A0"}, {{2, 3}, "A1"}})});
    CHECK(c.structures().size() == 1);
    CHECK(c.annotated_sentence_count() == 1);
  }
  SUBCASE("argument out of bounds") {
    CHECK(category_of([&] {
            Corpus({s}, {structure("s1", {1, 1}, {{{2, 4}, "A1"}})});
          }) == ErrorCategory::invariant);
  }
  SUBCASE("overlapping arguments name both spans") {
    try {
      Corpus({s}, {structure("s1", {0, 0}, {{{1, 2}, "A0"}, {{2, 3}, "A1"}})});
      FAIL("accepted overlap");
    } catch (const Error& e) {
      CHECK(e.category() == ErrorCategory::invariant);
      CHECK(std::string(e.what()).find("1..2") != std::string::npos);
      CHECK(std::string(e.what()).find("2..3") != std::string::npos);
    }
  }
  SUBCASE("argument overlapping the predicate") {
    CHECK(category_of([&] {
            Corpus({s}, {structure("s1", {1, 1}, {{{1, 2}, "A1"}})});
          }) == ErrorCategory::invariant);
  }
  SUBCASE("dependency arguments have width one") {
    CHECK(category_of([&] {
            Corpus({s}, {structure("s1", {1, 1}, {{{2, 3}, "A1"}},
                                   Formalism::dependency)});
          }) == ErrorCategory::invariant);
  }
  SUBCASE("unsorted arguments") {
    CHECK(category_of([&] {
            Corpus({s}, {structure("s1", {1, 1}, {{{3, 3}, "A1"}, {{0, 0}, "A0"}})});
          }) == ErrorCategory::invariant);
  }
  SUBCASE("tokens may not contain markers or whitespace") {
    CHECK(category_of([] { Corpus({sent("x", {"a", "<p>"})}, {}); }) ==
          ErrorCategory::invariant);
    CHECK(category_of([] { Corpus({sent("x", {"a b"})}, {}); }) ==
          ErrorCategory::invariant);
    CHECK(category_of([] { Corpus({sent("x", {""})}, {}); }) ==
          ErrorCategory::invariant);
  }
  SUBCASE("structure for an unknown sentence") {
    CHECK_THROWS_AS(Corpus({s}, {structure("s2", {1, 1}, {})}), Error);
  }
  SUBCASE("duplicate sentence ids") {
    CHECK_THROWS_AS(Corpus({s, s}, {}), Error);
  }
}

TEST_CASE("dependency_to_span") {
  const auto dep = structure("s1", {1, 1}, {{{3, 3}, "A1", Link::reference_to}},
                             Formalism::dependency);
  const auto span = dependency_to_span(dep);
  CHECK(span.formalism == Formalism::span);
  CHECK(span.arguments == dep.arguments);
  CHECK(dependency_to_span(span) == span);

  const auto empty = structure("s1", {1, 1}, {}, Formalism::dependency);
  auto flipped = empty;
  flipped.formalism = Formalism::span;
  CHECK(dependency_to_span(empty) == flipped);
}

TEST_CASE("dependency_to_span is idempotent over fuzz corpora") {
  std::mt19937_64 rng(11);
  auto world = testing::make_world(
      rng, {Style::propbank, Formalism::dependency, 60, 8, 0.0});
  for (const auto& s : world.corpus.structures()) {
    const auto once = dependency_to_span(s);
    CHECK(dependency_to_span(once) == once);
    CHECK(once.arguments.size() == s.arguments.size());
  }
}

TEST_CASE("canonical parse of an independent emitter") {
  std::mt19937_64 rng(7);
  auto world = testing::make_world(rng, {Style::propbank, Formalism::span, 10});
  std::string doc;
  for (const Sentence& s : world.corpus.sentences()) {
    std::vector<AnnotatedStructure> mine;
    for (const auto& st : world.corpus.structures()) {
      if (st.predicate.sentence_id == s.sentence_id) mine.push_back(st);
    }
    doc += emit_record(s, mine);
  }
  const Corpus parsed = parse_canonical(doc);
  CHECK(parsed.sentences() == world.corpus.sentences());
  CHECK(parsed.structures() == world.corpus.structures());
}

TEST_CASE("canonical write/parse round trip") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    testing::FuzzOptions o;
    o.style = seed % 2 ? Style::framenet : Style::propbank;
    o.formalism = seed % 3 ? Formalism::span : Formalism::dependency;
    o.sentences = 8;
    auto world = testing::make_world(rng, o);
    const std::string once = write_canonical(world.corpus);
    const Corpus back = parse_canonical(once);
    CHECK(back == world.corpus);
    CHECK(write_canonical(back) == once);
  }
}

TEST_CASE("canonical parse errors carry the record number") {
  const std::string good =
      R"({"doc_id":"d","sentence_id":"a","tokens":["x"],"structures":[]})";
  try {
    parse_canonical(good + "\n{\"sentence_id\": 3}\n");
    FAIL("accepted bad record");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::format);
    CHECK(std::string(e.what()).find("record 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_canonical("not json\n"), Error);
  CHECK(parse_canonical("").empty());
  CHECK(write_canonical(Corpus()).empty());
}

TEST_CASE("canonical fixture with links") {
  const Corpus c = parse_canonical(testing::fixture("span_propbank.jsonl"));
  CHECK(c.sentences().size() == 7);
  CHECK(c.annotated_sentence_count() == 6);
  const Sentence* s = c.find_sentence("japanese");
  REQUIRE(s != nullptr);
  const auto& begin = c.structures()[1];
  CHECK(begin.predicate.lemma == "begin");
  CHECK(begin.arguments[1].link == Link::reference_to);
  CHECK(rendered_role(begin.arguments[1]) == "R-ARGM-TMP");
}

TEST_CASE("CoNLL-2009 reader") {
  const Corpus c = parse_conll2009(testing::fixture("dependency.conll09"));
  REQUIRE(c.sentences().size() == 5);
  CHECK(c.sentences()[0].sentence_id == "00000001");
  CHECK(c.sentences()[0].text() == "Mary gave the book to John .");
  CHECK(c.annotated_sentence_count() == 4);
  REQUIRE(c.structures().size() == 5);

  const auto& give = c.structures()[0];
  CHECK(give.formalism == Formalism::dependency);
  CHECK(give.predicate.lemma == "give");
  CHECK(give.predicate.sense == "give.01");
  CHECK(give.predicate.range == TokenRange{1, 1});
  REQUIRE(give.arguments.size() == 3);
  CHECK(give.arguments[0] == Argument{{0, 0}, "A0", Link::none});
  CHECK(give.arguments[1] == Argument{{3, 3}, "A1", Link::none});
  CHECK(give.arguments[2] == Argument{{4, 4}, "A2", Link::none});

  // Second sentence has two predicate columns.
  const auto& begin = c.structures()[1];
  const auto& sell = c.structures()[2];
  CHECK(begin.predicate.lemma == "begin");
  CHECK(sell.predicate.lemma == "sell");
  CHECK(begin.arguments[1] == Argument{{5, 5}, "AM-TMP", Link::reference_to});
  CHECK(sell.arguments.size() == 2);

  const auto& help = c.structures()[3];
  CHECK(help.arguments[2] == Argument{{7, 7}, "A0", Link::continuation_of});
}

TEST_CASE("CoNLL-2009 write/parse round trip") {
  const Corpus c = parse_conll2009(testing::fixture("dependency.conll09"));
  const std::string written = write_conll2009(c);
  const Corpus back = parse_conll2009(written);
  CHECK(back == c);
  CHECK(write_conll2009(back) == written);
}

TEST_CASE("CoNLL-2009 format errors") {
  SUBCASE("ragged row names its line") {
    const std::string doc =
        "1\tA\ta\ta\t_\t_\t_\t_\t0\t0\t_\t_\t_\t_\n"
        "2\tB\tb\tb\t_\t_\n";
    try {
      parse_conll2009(doc);
      FAIL("accepted ragged row");
    } catch (const Error& e) {
      CHECK(e.category() == ErrorCategory::format);
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
  SUBCASE("APRED columns must match predicates") {
    const std::string doc =
        "1\tA\ta\ta\t_\t_\t_\t_\t0\t0\t_\t_\tY\ta.01\t_\t_\n"
        "2\tB\tb\tb\t_\t_\t_\t_\t0\t0\t_\t_\t_\t_\tA0\t_\n";
    CHECK_THROWS_AS(parse_conll2009(doc), Error);
  }
  SUBCASE("span structures cannot be written") {
    const Corpus c = parse_canonical(testing::fixture("span_propbank.jsonl"));
    CHECK_THROWS_AS(write_conll2009(c), Error);
  }
}

TEST_CASE("markers") {
  CHECK(markers::contains_marker("x<reference-to>"));
  CHECK_FALSE(markers::contains_marker("<q>"));
}
