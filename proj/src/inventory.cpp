#include "dsrl/inventory.hpp"

#include <fmt/format.h>

#include <array>
#include <json.hpp>

#include "dsrl/error.hpp"
#include "dsrl/markers.hpp"
#include "dsrl/text.hpp"

namespace dsrl {

namespace {

using json = nlohmann::json;

constexpr std::array<ModifierDefinition, 12> kConll2009Modifiers = {{
    {"AM-ADV", "adverbial modifier"},
    {"AM-CAU", "cause or reason"},
    {"AM-DIR", "direction or source"},
    {"AM-DIS", "discourse connective"},
    {"AM-EXT", "amount or extent"},
    {"AM-LOC", "location or position"},
    {"AM-MNR", "instrument or manner"},
    {"AM-MOD", "modal auxiliary"},
    {"AM-NEG", "negation marker"},
    {"AM-PNC", "purpose, not cause"},
    {"AM-PRD", "secondary predication"},
    {"AM-TMP", "time or duration"},
}};

constexpr std::array<ModifierDefinition, 17> kConll2012Modifiers = {{
    {"ARGM-ADJ", "adjectival modifier"},
    {"ARGM-ADV", "adverbial modifier"},
    {"ARGM-CAU", "cause or reason"},
    {"ARGM-COM", "comitative"},
    {"ARGM-DIR", "direction or source"},
    {"ARGM-DIS", "discourse connective"},
    {"ARGM-EXT", "amount or extent"},
    {"ARGM-GOL", "goal or destination"},
    {"ARGM-LOC", "location or position"},
    {"ARGM-LVB", "light verb"},
    {"ARGM-MNR", "instrument or manner"},
    {"ARGM-MOD", "modal auxiliary"},
    {"ARGM-NEG", "negation marker"},
    {"ARGM-PNC", "purpose, not cause"},
    {"ARGM-PRD", "secondary predication"},
    {"ARGM-PRP", "purpose or motivation"},
    {"ARGM-TMP", "time or duration"},
}};

[[noreturn]] void invariant_failure(const std::string& message) {
  throw Error(ErrorCategory::invariant, message);
}

// Definitions are stored trimmed; the decoder trims generated definitions the
// same way, so exact round trips need both sides normalized.
std::string checked_definition(std::string_view raw, const std::string& what) {
  std::string def(text::trim(raw));
  if (def.empty()) invariant_failure(fmt::format("{}: empty definition", what));
  if (def.find('\n') != std::string::npos ||
      def.find('\r') != std::string::npos) {
    invariant_failure(fmt::format("{}: definition contains a line break", what));
  }
  if (markers::contains_marker(def)) {
    invariant_failure(
        fmt::format("{}: definition contains a reserved marker", what));
  }
  return def;
}

}  // namespace

std::string_view to_string(ModifierSet set) {
  switch (set) {
    case ModifierSet::conll2009: return "conll2009";
    case ModifierSet::conll2012: return "conll2012";
    case ModifierSet::none: break;
  }
  return "none";
}

std::optional<ModifierSet> parse_modifier_set(std::string_view s) {
  if (s == "none") return ModifierSet::none;
  if (s == "conll2009") return ModifierSet::conll2009;
  if (s == "conll2012") return ModifierSet::conll2012;
  return std::nullopt;
}

std::span<const ModifierDefinition> modifier_table(ModifierSet set) {
  switch (set) {
    case ModifierSet::conll2009: return kConll2009Modifiers;
    case ModifierSet::conll2012: return kConll2012Modifiers;
    case ModifierSet::none: break;
  }
  return {};
}

Inventory::Inventory(Style style, std::vector<SenseEntry> entries,
                     ModifierSet modifier_set)
    : style_(style), modifier_set_(modifier_set) {
  for (const ModifierDefinition& m : modifier_table(modifier_set)) {
    modifiers_.emplace(std::string(m.label), std::string(m.definition));
  }
  for (SenseEntry& e : entries) {
    if (e.lemma.empty()) invariant_failure("sense entry with an empty lemma");
    if (e.sense_id.empty()) {
      invariant_failure(
          fmt::format("lemma '{}': sense entry with an empty sense_id", e.lemma));
    }
    const std::string what = fmt::format("{} ({})", e.sense_id, e.lemma);
    e.definition = checked_definition(e.definition, what);
    for (auto& [label, def] : e.roles) {
      if (label.empty()) invariant_failure(what + ": empty role label");
      def = checked_definition(def, fmt::format("{} role {}", what, label));
    }
    auto key = std::make_pair(text::to_lower(e.lemma), e.sense_id);
    auto [it, inserted] = entries_.emplace(std::move(key), std::move(e));
    if (!inserted) {
      throw Error(ErrorCategory::format,
                  fmt::format("duplicate sense '{}' for lemma '{}'",
                              it->second.sense_id, it->second.lemma));
    }
  }
}

std::vector<const SenseEntry*> Inventory::entries() const {
  std::vector<const SenseEntry*> out;
  out.reserve(entries_.size());
  for (const auto& [key, entry] : entries_) out.push_back(&entry);
  return out;
}

std::vector<const SenseEntry*> Inventory::candidate_senses(
    std::string_view lemma) const {
  std::vector<const SenseEntry*> out;
  const std::string key = text::to_lower(lemma);
  for (auto it = entries_.lower_bound({key, std::string()});
       it != entries_.end() && it->first.first == key; ++it) {
    out.push_back(&it->second);
  }
  return out;
}

const SenseEntry* Inventory::find(std::string_view lemma,
                                  std::string_view sense_id) const {
  auto it = entries_.find({text::to_lower(lemma), std::string(sense_id)});
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<std::string> Inventory::role_definition(
    const SenseEntry& entry, std::string_view role) const {
  if (auto it = entry.roles.find(std::string(role)); it != entry.roles.end()) {
    return it->second;
  }
  if (auto it = modifiers_.find(std::string(role)); it != modifiers_.end()) {
    return it->second;
  }
  return std::nullopt;
}

std::map<std::string, std::string> Inventory::role_candidates(
    const SenseEntry& entry) const {
  std::map<std::string, std::string> out = entry.roles;
  for (const auto& [label, def] : modifiers_) out.emplace(label, def);
  return out;
}

Inventory load_inventory(std::string_view document) {
  Style style = Style::propbank;
  ModifierSet modifier_set = ModifierSet::none;
  std::vector<SenseEntry> entries;

  std::size_t record = 0;
  std::size_t pos = 0;
  while (pos < document.size()) {
    std::size_t eol = document.find('\n', pos);
    if (eol == std::string_view::npos) eol = document.size();
    std::string_view line = document.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty()) continue;
    ++record;

    auto fail = [&](const std::string& what) -> void {
      throw Error(ErrorCategory::format,
                  fmt::format("inventory record {}: {}", record, what));
    };

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      fail(fmt::format("invalid JSON: {}", e.what()));
    }
    if (!obj.is_object()) fail("record must be an object");

    try {
      if (!obj.contains("lemma")) {
        if (record != 1) fail("header record must come first");
        if (auto it = obj.find("style"); it != obj.end()) {
          auto s = parse_style(it->get<std::string>());
          if (!s) fail(fmt::format("unknown style '{}'", it->get<std::string>()));
          style = *s;
        }
        if (auto it = obj.find("modifier_set"); it != obj.end() && !it->is_null()) {
          auto m = parse_modifier_set(it->get<std::string>());
          if (!m) {
            fail(fmt::format("unknown modifier_set '{}'",
                             it->get<std::string>()));
          }
          modifier_set = *m;
        }
        continue;
      }
      SenseEntry e;
      e.lemma = obj.at("lemma").get<std::string>();
      e.sense_id = obj.at("sense_id").get<std::string>();
      e.definition = obj.at("definition").get<std::string>();
      if (auto it = obj.find("roles"); it != obj.end()) {
        if (!it->is_object()) fail("'roles' must be an object");
        for (const auto& [label, def] : it->items()) {
          e.roles.emplace(label, def.get<std::string>());
        }
      }
      entries.push_back(std::move(e));
    } catch (const json::exception& e) {
      fail(e.what());
    }
  }
  return Inventory(style, std::move(entries), modifier_set);
}

}  // namespace dsrl
