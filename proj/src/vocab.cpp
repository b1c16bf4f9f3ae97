#include "htkgh/vocab.hpp"

namespace htkgh {

std::string entity_label(std::string_view base, const std::optional<std::string>& sector) {
  std::string label(base);
  if (sector && !sector->empty()) {
    label += " (";
    label += *sector;
    label += ')';
  }
  return label;
}

std::pair<std::string, std::optional<std::string>> split_sector_label(std::string_view label) {
  if (label.size() >= 4 && label.back() == ')') {
    const auto open = label.rfind(" (");
    if (open != std::string_view::npos && open > 0 && open + 3 < label.size()) {
      return {std::string(label.substr(0, open)),
              std::string(label.substr(open + 2, label.size() - open - 3))};
    }
  }
  return {std::string(label), std::nullopt};
}

std::string EntityTable::key(EntityKind kind, std::string_view label) {
  std::string k(1, kind == EntityKind::Country ? 'C' : 'X');
  k += label;
  return k;
}

EntityId EntityTable::intern(EntityKind kind, std::string_view base,
                             const std::optional<std::string>& sector) {
  EntityInfo entry;
  entry.kind = kind;
  entry.base = std::string(base);
  if (kind == EntityKind::Country && sector && !sector->empty()) entry.sector = sector;
  entry.label = entity_label(entry.base, entry.sector);

  auto k = key(kind, entry.label);
  if (auto it = index_.find(k); it != index_.end()) return it->second;
  EntityId id{static_cast<std::uint32_t>(entries_.size())};
  entries_.push_back(std::move(entry));
  index_.emplace(std::move(k), id);
  return id;
}

EntityId EntityTable::intern_label(EntityKind kind, std::string_view label) {
  if (kind == EntityKind::Context) return intern(kind, label, std::nullopt);
  auto [base, sector] = split_sector_label(label);
  return intern(kind, base, sector);
}

std::optional<EntityId> EntityTable::find(EntityKind kind, std::string_view label) const {
  auto it = index_.find(key(kind, label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const EntityInfo& EntityTable::info(EntityId id) const {
  if (!contains(id)) throw Error(Errc::UnknownSymbol, "entity id " + std::to_string(id.value));
  return entries_[id.value];
}

Vocab::Vocab() {
  qualifier_relations.intern("location");
  qualifier_relations.intern("context");
}

}  // namespace htkgh
