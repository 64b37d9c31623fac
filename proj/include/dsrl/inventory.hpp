#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dsrl/corpus.hpp"

namespace dsrl {

struct SenseEntry {
  std::string lemma;
  std::string sense_id;
  std::string definition;
  std::map<std::string, std::string> roles;  // role label -> definition

  bool operator==(const SenseEntry&) const = default;
};

enum class ModifierSet { none, conll2009, conll2012 };

std::string_view to_string(ModifierSet set);
std::optional<ModifierSet> parse_modifier_set(std::string_view s);

struct ModifierDefinition {
  std::string_view label;
  std::string_view definition;
};

// The bundled argument-modifier definition tables, in label order.
std::span<const ModifierDefinition> modifier_table(ModifierSet set);

class Inventory {
 public:
  Inventory() = default;
  // Validates entries: non-empty definitions, no duplicate
  // (lemma, sense_id) under case-insensitive lemma comparison.
  Inventory(Style style, std::vector<SenseEntry> entries,
            ModifierSet modifier_set = ModifierSet::none);

  Style style() const { return style_; }
  ModifierSet modifier_set() const { return modifier_set_; }
  const std::map<std::string, std::string>& modifiers() const {
    return modifiers_;
  }
  std::size_t size() const { return entries_.size(); }

  // All entries in (lowercased lemma, sense_id) order.
  std::vector<const SenseEntry*> entries() const;

  // Entries whose lemma matches case-insensitively, sorted by sense_id. An
  // empty result means the predicate is outside the inventory.
  std::vector<const SenseEntry*> candidate_senses(std::string_view lemma) const;

  const SenseEntry* find(std::string_view lemma,
                         std::string_view sense_id) const;

  // Entry-specific definition first, then the modifier table.
  std::optional<std::string> role_definition(const SenseEntry& entry,
                                             std::string_view role) const;

  // Candidate set for role casting: the entry's roles merged with the
  // modifier table. Entry-specific definitions win on a shared label.
  std::map<std::string, std::string> role_candidates(
      const SenseEntry& entry) const;

  friend bool operator==(const Inventory& a, const Inventory& b) {
    return a.style_ == b.style_ && a.modifier_set_ == b.modifier_set_ &&
           a.entries_ == b.entries_;
  }

 private:
  Style style_ = Style::propbank;
  ModifierSet modifier_set_ = ModifierSet::none;
  std::map<std::pair<std::string, std::string>, SenseEntry> entries_;
  std::map<std::string, std::string> modifiers_;
};

// Inventory document: optional header record
//   {"style": "propbank"|"framenet", "modifier_set": "conll2009"|"conll2012"}
// followed by one {"lemma", "sense_id", "definition", "roles"} object per line.
Inventory load_inventory(std::string_view document);

}  // namespace dsrl
