// CoNLL-2009 reader and writer.
//
//   ID FORM LEMMA PLEMMA POS PPOS FEAT PFEAT HEAD PHEAD DEPREL PDEPREL
//   FILLPRED PRED APRED1 ... APREDn
//
// Syntactic columns are read past and written as "_".

#include <fmt/format.h>

#include <algorithm>
#include <map>

#include "dsrl/corpus.hpp"
#include "dsrl/error.hpp"
#include "dsrl/text.hpp"

namespace dsrl {

namespace {

constexpr std::size_t kFormCol = 1;
constexpr std::size_t kLemmaCol = 2;
constexpr std::size_t kPLemmaCol = 3;
constexpr std::size_t kFillPredCol = 12;
constexpr std::size_t kPredCol = 13;
constexpr std::size_t kFirstAPredCol = 14;

struct Row {
  std::size_t line;
  std::vector<std::string> fields;
};

bool is_null(const std::string& field) { return field == "_"; }

void flush_sentence(std::vector<Row>& rows, std::vector<Sentence>& sentences,
                    std::vector<AnnotatedStructure>& structures,
                    std::size_t& dropped) {
  if (rows.empty()) return;
  const std::size_t columns = rows.front().fields.size();
  for (const Row& r : rows) {
    if (r.fields.size() != columns) {
      throw Error(ErrorCategory::format,
                  fmt::format("line {}: expected {} columns, found {}", r.line,
                              columns, r.fields.size()));
    }
  }
  if (columns < kFirstAPredCol) {
    throw Error(ErrorCategory::format,
                fmt::format("line {}: expected at least {} columns, found {}",
                            rows.front().line, kFirstAPredCol, columns));
  }

  Sentence sentence;
  sentence.sentence_id = fmt::format("{:08d}", sentences.size() + 1);
  std::vector<int> predicates;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& f = rows[i].fields;
    sentence.tokens.push_back(f[kFormCol]);
    if (f[kFillPredCol] == "Y") predicates.push_back(static_cast<int>(i));
  }
  const std::size_t apred_columns = columns - kFirstAPredCol;
  if (apred_columns != predicates.size()) {
    throw Error(ErrorCategory::format,
                fmt::format("line {}: sentence has {} predicates but {} APRED "
                            "columns",
                            rows.front().line, predicates.size(),
                            apred_columns));
  }

  for (std::size_t k = 0; k < predicates.size(); ++k) {
    const int p = predicates[k];
    const auto& f = rows[p].fields;
    AnnotatedStructure s;
    s.formalism = Formalism::dependency;
    s.predicate.sentence_id = sentence.sentence_id;
    s.predicate.range = {p, p};
    s.predicate.style = Style::propbank;
    if (!is_null(f[kPLemmaCol])) {
      s.predicate.lemma = f[kPLemmaCol];
    } else if (!is_null(f[kLemmaCol])) {
      s.predicate.lemma = f[kLemmaCol];
    } else {
      s.predicate.lemma = f[kFormCol];
    }
    if (!is_null(f[kPredCol])) s.predicate.sense = f[kPredCol];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string& label = rows[i].fields[kFirstAPredCol + k];
      if (is_null(label)) continue;
      if (static_cast<int>(i) == p) {
        // Nominal predicates occasionally label themselves; a predicate
        // cannot be its own argument in the description format.
        ++dropped;
        continue;
      }
      const int t = static_cast<int>(i);
      s.arguments.push_back(argument_from_rendered({t, t}, label));
    }
    structures.push_back(std::move(s));
  }
  sentences.push_back(std::move(sentence));
  rows.clear();
}

}  // namespace

Corpus parse_conll2009(std::string_view document) {
  std::vector<Sentence> sentences;
  std::vector<AnnotatedStructure> structures;
  std::vector<Row> rows;
  std::size_t dropped = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < document.size()) {
    std::size_t eol = document.find('\n', pos);
    if (eol == std::string_view::npos) eol = document.size();
    std::string_view line = document.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty()) {
      flush_sentence(rows, sentences, structures, dropped);
      continue;
    }
    rows.push_back({line_no, text::split(line, '\t')});
  }
  flush_sentence(rows, sentences, structures, dropped);

  std::string provenance = "conll2009";
  if (dropped > 0) {
    provenance += fmt::format(" (dropped {} self-referential arguments)",
                              dropped);
  }
  return Corpus(std::move(sentences), std::move(structures),
                std::move(provenance));
}

std::string write_conll2009(const Corpus& corpus) {
  std::map<std::string_view, std::vector<const AnnotatedStructure*>> by_sentence;
  for (const AnnotatedStructure& s : corpus.structures()) {
    if (s.formalism != Formalism::dependency) {
      throw Error(ErrorCategory::precondition,
                  fmt::format("sentence '{}': CoNLL-2009 export requires "
                              "dependency structures",
                              s.predicate.sentence_id));
    }
    if (s.predicate.range.start != s.predicate.range.end) {
      throw Error(ErrorCategory::precondition,
                  fmt::format("sentence '{}': CoNLL-2009 export requires "
                              "single-token predicates",
                              s.predicate.sentence_id));
    }
    by_sentence[s.predicate.sentence_id].push_back(&s);
  }

  std::string out;
  for (const Sentence& sentence : corpus.sentences()) {
    std::vector<const AnnotatedStructure*> preds;
    if (auto it = by_sentence.find(sentence.sentence_id);
        it != by_sentence.end()) {
      preds = it->second;
    }
    std::sort(preds.begin(), preds.end(),
              [](const AnnotatedStructure* a, const AnnotatedStructure* b) {
                return a->predicate.range < b->predicate.range;
              });

    const int n = sentence.size();
    // labels[k][i]: APRED column k at token i.
    std::vector<std::vector<std::string>> labels(
        preds.size(), std::vector<std::string>(n, "_"));
    for (std::size_t k = 0; k < preds.size(); ++k) {
      for (const Argument& a : preds[k]->arguments) {
        labels[k][a.span.start] = rendered_role(a);
      }
    }

    std::size_t next_pred = 0;
    for (int i = 0; i < n; ++i) {
      const AnnotatedStructure* pred = nullptr;
      if (next_pred < preds.size() &&
          preds[next_pred]->predicate.range.start == i) {
        pred = preds[next_pred++];
      }
      const std::string lemma = pred ? pred->predicate.lemma : "_";
      std::vector<std::string> fields = {
          std::to_string(i + 1), sentence.tokens[i], lemma, lemma,
          "_", "_", "_", "_", "_", "_", "_", "_",
          pred ? "Y" : "_",
          pred && pred->predicate.sense ? *pred->predicate.sense : "_"};
      for (std::size_t k = 0; k < preds.size(); ++k) {
        fields.push_back(labels[k][i]);
      }
      out += text::join(fields, "\t");
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

}  // namespace dsrl
