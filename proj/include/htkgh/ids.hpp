#pragma once

#include <compare>
#include <cstdint>
#include <functional>

namespace htkgh {

// Dense interned index. Distinct tags keep entity, relation and
// qualifier-relation id spaces from mixing.
template <class Tag>
struct StrongId {
  std::uint32_t value = 0;

  constexpr StrongId() = default;
  constexpr explicit StrongId(std::uint32_t v) : value(v) {}

  constexpr auto operator<=>(const StrongId&) const = default;
};

using EntityId = StrongId<struct EntityTag>;
using RelationId = StrongId<struct RelationTag>;
using QualRelId = StrongId<struct QualRelTag>;

}  // namespace htkgh

template <class Tag>
struct std::hash<htkgh::StrongId<Tag>> {
  std::size_t operator()(const htkgh::StrongId<Tag>& id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
