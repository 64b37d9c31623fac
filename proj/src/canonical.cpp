// Canonical corpus format: one JSON object per line, one line per sentence.

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <json.hpp>

#include "dsrl/corpus.hpp"
#include "dsrl/error.hpp"

namespace dsrl {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void format_failure(std::size_t record, const std::string& what) {
  throw Error(ErrorCategory::format, fmt::format("record {}: {}", record, what));
}

const json& require(const json& obj, const char* key, std::size_t record) {
  auto it = obj.find(key);
  if (it == obj.end()) format_failure(record, fmt::format("missing '{}'", key));
  return *it;
}

std::string require_string(const json& obj, const char* key,
                           std::size_t record) {
  const json& v = require(obj, key, record);
  if (!v.is_string()) {
    format_failure(record, fmt::format("'{}' must be a string", key));
  }
  return v.get<std::string>();
}

int require_int(const json& obj, const char* key, std::size_t record) {
  const json& v = require(obj, key, record);
  if (!v.is_number_integer()) {
    format_failure(record, fmt::format("'{}' must be an integer", key));
  }
  return v.get<int>();
}

Argument read_argument(const json& a, std::size_t record) {
  if (!a.is_object()) format_failure(record, "argument must be an object");
  Argument arg;
  arg.span = {require_int(a, "start", record), require_int(a, "end", record)};
  arg.role = require_string(a, "role", record);
  if (auto it = a.find("link"); it != a.end()) {
    if (!it->is_string()) format_failure(record, "'link' must be a string");
    auto link = parse_link(it->get<std::string>());
    if (!link) {
      format_failure(record, fmt::format("unknown link '{}'",
                                         it->get<std::string>()));
    }
    arg.link = *link;
  }
  return arg;
}

AnnotatedStructure read_structure(const json& s, const std::string& sentence_id,
                                  std::size_t record) {
  if (!s.is_object()) format_failure(record, "structure must be an object");
  AnnotatedStructure out;
  const json& p = require(s, "predicate", record);
  if (!p.is_object()) format_failure(record, "'predicate' must be an object");
  out.predicate.sentence_id = sentence_id;
  out.predicate.range = {require_int(p, "start", record),
                         require_int(p, "end", record)};
  out.predicate.lemma = require_string(p, "lemma", record);
  if (auto it = p.find("sense"); it != p.end() && !it->is_null()) {
    if (!it->is_string()) format_failure(record, "'sense' must be a string");
    out.predicate.sense = it->get<std::string>();
  }
  std::string style = require_string(p, "style", record);
  auto parsed_style = parse_style(style);
  if (!parsed_style) {
    format_failure(record, fmt::format("unknown style '{}'", style));
  }
  out.predicate.style = *parsed_style;

  std::string formalism = require_string(s, "formalism", record);
  auto parsed_formalism = parse_formalism(formalism);
  if (!parsed_formalism) {
    format_failure(record, fmt::format("unknown formalism '{}'", formalism));
  }
  out.formalism = *parsed_formalism;

  const json& args = require(s, "arguments", record);
  if (!args.is_array()) format_failure(record, "'arguments' must be an array");
  for (const json& a : args) out.arguments.push_back(read_argument(a, record));
  return out;
}

}  // namespace

Corpus parse_canonical(std::string_view document) {
  std::vector<Sentence> sentences;
  std::vector<AnnotatedStructure> structures;
  std::map<std::string, std::size_t> first_seen;

  std::size_t record = 0;
  std::size_t pos = 0;
  while (pos < document.size()) {
    std::size_t eol = document.find('\n', pos);
    if (eol == std::string_view::npos) eol = document.size();
    std::string_view line = document.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    ++record;

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      format_failure(record, fmt::format("invalid JSON: {}", e.what()));
    }
    if (!obj.is_object()) format_failure(record, "record must be an object");

    try {
      Sentence sentence;
      sentence.sentence_id = require_string(obj, "sentence_id", record);
      if (auto it = obj.find("doc_id"); it != obj.end() && !it->is_null()) {
        if (!it->is_string()) {
          format_failure(record, "'doc_id' must be a string");
        }
        std::string doc = it->get<std::string>();
        if (!doc.empty()) sentence.doc_id = std::move(doc);
      }
      const json& tokens = require(obj, "tokens", record);
      if (!tokens.is_array()) format_failure(record, "'tokens' must be an array");
      for (const json& t : tokens) {
        if (!t.is_string()) format_failure(record, "tokens must be strings");
        sentence.tokens.push_back(t.get<std::string>());
      }

      std::vector<AnnotatedStructure> local;
      if (auto it = obj.find("structures"); it != obj.end()) {
        if (!it->is_array()) {
          format_failure(record, "'structures' must be an array");
        }
        for (const json& s : *it) {
          local.push_back(read_structure(s, sentence.sentence_id, record));
        }
      }

      // Validate here so failures carry the record index.
      validate(sentence);
      for (const AnnotatedStructure& s : local) validate(s, sentence);
      auto [it, inserted] = first_seen.emplace(sentence.sentence_id, record);
      if (!inserted) {
        throw Error(ErrorCategory::invariant,
                    fmt::format("duplicate sentence_id '{}' (first in record {})",
                                sentence.sentence_id, it->second));
      }
      sentences.push_back(std::move(sentence));
      for (AnnotatedStructure& s : local) structures.push_back(std::move(s));
    } catch (const json::exception& e) {
      format_failure(record, e.what());
    } catch (const Error& e) {
      if (e.category() == ErrorCategory::format) throw;
      throw Error(e.category(), fmt::format("record {}: {}", record, e.what()));
    }
  }
  return Corpus(std::move(sentences), std::move(structures), "canonical");
}

std::string write_canonical(const Corpus& corpus) {
  std::map<std::string_view, std::vector<const AnnotatedStructure*>> by_sentence;
  for (const AnnotatedStructure& s : corpus.structures()) {
    by_sentence[s.predicate.sentence_id].push_back(&s);
  }

  std::string out;
  for (const Sentence& s : corpus.sentences()) {
    const Sentence* sentence = &s;
    ordered_json rec;
    rec["doc_id"] = sentence->doc_id ? *sentence->doc_id : std::string();
    rec["sentence_id"] = sentence->sentence_id;
    rec["tokens"] = sentence->tokens;
    ordered_json structures = ordered_json::array();
    auto found = by_sentence.find(sentence->sentence_id);
    if (found != by_sentence.end()) {
      for (const AnnotatedStructure* s : found->second) {
        ordered_json pred;
        pred["start"] = s->predicate.range.start;
        pred["end"] = s->predicate.range.end;
        pred["lemma"] = s->predicate.lemma;
        pred["sense"] = s->predicate.sense ? ordered_json(*s->predicate.sense)
                                           : ordered_json(nullptr);
        pred["style"] = to_string(s->predicate.style);
        ordered_json args = ordered_json::array();
        for (const Argument& a : s->arguments) {
          ordered_json arg;
          arg["start"] = a.span.start;
          arg["end"] = a.span.end;
          arg["role"] = a.role;
          arg["link"] = to_string(a.link);
          args.push_back(std::move(arg));
        }
        ordered_json st;
        st["predicate"] = std::move(pred);
        st["formalism"] = to_string(s->formalism);
        st["arguments"] = std::move(args);
        structures.push_back(std::move(st));
      }
    }
    rec["structures"] = std::move(structures);
    try {
      out += rec.dump();
    } catch (const ordered_json::exception& e) {
      throw Error(ErrorCategory::format,
                  fmt::format("sentence '{}': {}", sentence->sentence_id,
                              e.what()));
    }
    out += '\n';
  }
  return out;
}

}  // namespace dsrl
