#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "htkgh/error.hpp"
#include "htkgh/ids.hpp"

namespace htkgh {

// Bijective label <-> dense id table.
template <class Id>
class SymbolTable {
 public:
  Id intern(std::string_view label) {
    auto it = index_.find(std::string(label));
    if (it != index_.end()) return it->second;
    Id id{static_cast<std::uint32_t>(labels_.size())};
    labels_.emplace_back(label);
    index_.emplace(labels_.back(), id);
    return id;
  }

  std::optional<Id> find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& label(Id id) const {
    if (!contains(id)) throw Error(Errc::UnknownSymbol, "id " + std::to_string(id.value));
    return labels_[id.value];
  }

  bool contains(Id id) const { return id.value < labels_.size(); }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

  bool operator==(const SymbolTable& other) const { return labels_ == other.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Id> index_;
};

// Country entities are actors, recipients and location values. Every other
// qualifier value (contexts, causes, ...) is a Context entity, which keeps it
// out of the country shuffle.
enum class EntityKind : std::uint8_t { Country, Context };

struct EntityInfo {
  EntityKind kind = EntityKind::Country;
  std::string base;                   // country name or context string
  std::optional<std::string> sector;  // Country only
  std::string label;                  // "base (SECTOR)" or "base"

  bool operator==(const EntityInfo&) const = default;
};

std::string entity_label(std::string_view base, const std::optional<std::string>& sector);

// Splits "Canada (GOV)" into {"Canada", "GOV"}; labels without a trailing
// parenthesised group have no sector.
std::pair<std::string, std::optional<std::string>> split_sector_label(std::string_view label);

// Entities are keyed by (kind, label) so a context string that happens to
// spell a country name never aliases the country.
class EntityTable {
 public:
  EntityId intern(EntityKind kind, std::string_view base, const std::optional<std::string>& sector);
  EntityId intern_label(EntityKind kind, std::string_view label);
  std::optional<EntityId> find(EntityKind kind, std::string_view label) const;

  const EntityInfo& info(EntityId id) const;
  const std::string& label(EntityId id) const { return info(id).label; }
  bool contains(EntityId id) const { return id.value < entries_.size(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<EntityInfo>& entries() const { return entries_; }

  bool operator==(const EntityTable& other) const { return entries_ == other.entries_; }

 private:
  static std::string key(EntityKind kind, std::string_view label);

  std::vector<EntityInfo> entries_;
  std::unordered_map<std::string, EntityId> index_;
};

inline constexpr QualRelId kLocation{0};
inline constexpr QualRelId kContext{1};

struct Vocab {
  EntityTable entities;
  SymbolTable<RelationId> relations;
  SymbolTable<QualRelId> qualifier_relations;

  // Seeds the qualifier relations so "location" and "context" always hold ids 0 and 1.
  Vocab();

  EntityKind kind_for_qualifier(QualRelId qrel) const {
    return qrel == kLocation ? EntityKind::Country : EntityKind::Context;
  }

  bool operator==(const Vocab&) const = default;
};

}  // namespace htkgh
