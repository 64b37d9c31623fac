#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "dsrl/analysis.hpp"
#include "dsrl/codec.hpp"
#include "dsrl/error.hpp"
#include "dsrl/generators.hpp"
#include "dsrl/pipeline.hpp"
#include "dsrl/retrieval.hpp"
#include "dsrl/scorer.hpp"
#include "dsrl/stats.hpp"

namespace py = pybind11;
using namespace dsrl;

namespace {

py::handle g_error_type;

std::optional<StylePrefix> make_prefix(const std::optional<std::string>& style,
                                       const std::optional<std::string>& formalism) {
  if (!style && !formalism) return std::nullopt;
  StylePrefix p;
  if (style) {
    auto s = parse_style(*style);
    if (!s) throw Error(ErrorCategory::usage, "unknown style: " + *style);
    p.inventory = *s;
  }
  if (formalism) {
    auto f = *formalism == "dep-srl"    ? std::optional(Formalism::dependency)
             : *formalism == "span-srl" ? std::optional(Formalism::span)
                                        : parse_formalism(*formalism);
    if (!f) throw Error(ErrorCategory::usage, "unknown formalism: " + *formalism);
    p.formalism = *f;
  }
  return p;
}

ScorerKind scorer_kind(const Corpus& gold, const std::optional<std::string>& name) {
  if (!name) return default_scorer(gold);
  auto k = parse_scorer_kind(*name);
  if (!k) throw Error(ErrorCategory::usage, "unknown scorer: " + *name);
  return *k;
}

std::unique_ptr<Embedder> make_embedder(const std::optional<std::string>& endpoint) {
  if (endpoint) return std::make_unique<RemoteEmbedder>(*endpoint);
  return std::make_unique<BuiltinEmbedder>();
}

py::dict counts_dict(const Counts& c) {
  py::dict d;
  d["correct"] = c.correct;
  d["predicted"] = c.predicted;
  d["gold"] = c.gold;
  d["precision"] = c.precision();
  d["recall"] = c.recall();
  d["f1"] = c.f1();
  return d;
}

py::dict report_dict(const ScoreReport& r, ScorerKind kind) {
  py::dict d = counts_dict(r.total);
  d["scorer"] = std::string(to_string(kind));
  py::dict breakdown;
  for (const auto& [name, c] : r.breakdown) breakdown[py::str(name)] = counts_dict(c);
  d["breakdown"] = breakdown;
  return d;
}

py::dict decode_dict(const DecodeResult& r) {
  py::dict d;
  d["predicate"] = r.structure.predicate_surface;
  d["sense_definition"] = r.structure.sense_definition;
  if (r.structure.prefix) {
    d["prefix"] = py::make_tuple(std::string(to_string(r.structure.prefix->inventory)),
                                 r.structure.prefix->formalism == Formalism::dependency
                                     ? "dep-srl"
                                     : "span-srl");
  } else {
    d["prefix"] = py::none();
  }
  py::list args;
  for (const auto& a : r.structure.arguments) {
    py::dict x;
    x["text"] = a.text;
    x["definition"] = a.definition;
    x["link"] = std::string(to_string(a.link));
    x["offset"] = a.offset;
    if (a.alignment) {
      x["alignment"] = py::make_tuple(a.alignment->start, a.alignment->end);
    } else {
      x["alignment"] = py::none();
    }
    args.append(x);
  }
  d["arguments"] = args;
  py::list issues;
  for (const auto& i : r.issues) {
    issues.append(py::make_tuple(std::string(to_string(i.kind)), i.position, i.note));
  }
  d["issues"] = issues;
  return d;
}

}  // namespace

PYBIND11_MODULE(_dsrl, m) {
  m.doc() = "Descriptive semantic role labeling toolkit";

  static py::exception<Error> error(m, "DsrlError");
  g_error_type = error;
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(g_error_type)(e.what());
      exc.attr("category") = std::string(category_name(e.category()));
      PyErr_SetObject(g_error_type.ptr(), exc.ptr());
    }
  });

  py::class_<Corpus>(m, "Corpus")
      .def(py::init<>())
      .def_static("from_canonical", [](const std::string& doc) { return parse_canonical(doc); })
      .def_static("from_conll2009", [](const std::string& doc) { return parse_conll2009(doc); })
      .def("to_canonical", &write_canonical)
      .def("to_conll2009", &write_conll2009)
      .def_property_readonly("sentence_count",
                             [](const Corpus& c) { return c.sentences().size(); })
      .def_property_readonly("structure_count",
                             [](const Corpus& c) { return c.structures().size(); })
      .def_property_readonly("annotated_sentence_count", &Corpus::annotated_sentence_count)
      .def("sentence_ids",
           [](const Corpus& c) {
             std::vector<std::string> out;
             for (const auto& s : c.sentences()) out.push_back(s.sentence_id);
             return out;
           })
      .def("__eq__", [](const Corpus& a, const Corpus& b) { return a == b; });

  py::class_<Inventory>(m, "Inventory")
      .def_static("load", [](const std::string& doc) { return load_inventory(doc); })
      .def_property_readonly("style",
                             [](const Inventory& i) { return std::string(to_string(i.style())); })
      .def("__len__", &Inventory::size)
      .def("role_candidates", [](const Inventory& inv, const std::string& lemma,
                                 const std::string& sense) {
        const SenseEntry* e = inv.find(lemma, sense);
        if (!e) throw Error(ErrorCategory::lookup, "no entry " + lemma + " " + sense);
        return inv.role_candidates(*e);
      });

  m.def("encode", [](const Corpus& c, const Inventory& inv,
                     std::optional<std::string> style, std::optional<std::string> formalism) {
          const SequencePair p = encode_corpus(c, inv, make_prefix(style, formalism));
          return std::make_pair(p.inputs, p.targets);
        },
        py::arg("corpus"), py::arg("inventory"), py::arg("style") = py::none(),
        py::arg("formalism") = py::none(),
        "Input and target sequences, one per structure.");

  m.def("decode", [](const std::string& surface,
                     std::optional<std::vector<std::string>> tokens) {
          if (!tokens) return decode_dict(decode_description(std::string_view(surface)));
          const Sentence s{"", std::nullopt, *tokens};
          return decode_dict(decode_description(std::string_view(surface), &s));
        },
        py::arg("surface"), py::arg("tokens") = py::none());

  m.def("health", &service_health, py::arg("endpoint"),
        py::call_guard<py::gil_scoped_release>());
  m.def("embed", [](const std::string& text) { return embed_builtin(text).values; });
  m.def("cosine", [](const std::vector<double>& u, const std::vector<double>& v) {
    return cosine(EmbeddingVector{u}, EmbeddingVector{v});
  });
  m.def("retrieve", [](const std::map<std::string, std::string>& candidates,
                       const std::string& text, std::optional<std::string> endpoint) {
          const auto emb = make_embedder(endpoint);
          py::gil_scoped_release release;
          const RetrievalResult r = retrieve_label(candidates, text, *emb);
          return std::make_pair(r.label, r.score);
        },
        py::arg("candidates"), py::arg("text"), py::arg("endpoint") = py::none());

  m.def("score", [](const Corpus& gold, const Corpus& pred, std::optional<std::string> scorer) {
          const ScorerKind k = scorer_kind(gold, scorer);
          return report_dict(score(k, gold, pred), k);
        },
        py::arg("gold"), py::arg("pred"), py::arg("scorer") = py::none());

  m.def("partition_table", [](const Corpus& gold, const Corpus& pred, const Corpus& train,
                              std::optional<std::string> scorer) {
          return render_table_jsonl(
              partitioned_scores(gold, pred, sense_counts(train), scorer_kind(gold, scorer)));
        },
        py::arg("gold"), py::arg("pred"), py::arg("train"), py::arg("scorer") = py::none(),
        "Partition table as JSON lines.");

  m.def("stats_json", [](const Corpus& c, const Inventory& inv) {
    return render_stats_json(corpus_stats(c, inv));
  });

  m.def("downsample", &downsample, py::arg("corpus"), py::arg("fraction"),
        py::arg("seed"));

  m.def("run_pipeline",
        [](const Corpus& gold, const Inventory& inv, const std::string& generator,
           std::optional<std::string> scorer, std::optional<Corpus> train,
           std::optional<std::string> endpoint, std::optional<std::string> style,
           std::optional<std::string> formalism) {
          GenerateOptions opt;
          auto kind = parse_generator_kind(generator);
          if (!kind) throw Error(ErrorCategory::usage, "unknown generator: " + generator);
          opt.kind = *kind;
          opt.prefix = make_prefix(style, formalism);
          if (endpoint) opt.endpoint = *endpoint;
          SenseCounts counts;
          if (train) counts = sense_counts(*train);
          opt.counts = &counts;
          const ScorerKind k = scorer_kind(gold, scorer);
          const BuiltinEmbedder emb;
          PipelineResult r;
          {
            py::gil_scoped_release release;
            r = run_pipeline(gold, inv, opt, emb, k);
          }
          py::dict d;
          d["descriptions"] = r.descriptions;
          d["predicted"] = r.predicted;
          d["report"] = report_dict(r.report, k);
          std::size_t issues = 0;
          for (const auto& x : r.decoded) issues += x.issues.size();
          d["issue_count"] = issues;
          return d;
        },
        py::arg("gold"), py::arg("inventory"), py::arg("generator") = "gold",
        py::arg("scorer") = py::none(), py::arg("train") = py::none(),
        py::arg("endpoint") = py::none(), py::arg("style") = py::none(),
        py::arg("formalism") = py::none());
}
