#pragma once

#include <compare>
#include <cstdint>
#include <string_view>
#include <vector>

#include "htkgh/ids.hpp"
#include "htkgh/timestamp.hpp"
#include "htkgh/vocab.hpp"

namespace htkgh {

struct QualifierPair {
  QualRelId qrel;
  EntityId value;

  auto operator<=>(const QualifierPair&) const = default;
};

// One hyper-relational fact: a non-empty actor set related to a possibly
// empty recipient set at a day, with ordered qualifiers. Actor and recipient
// sets are duplicate-free and keep their source order.
struct Fact {
  std::vector<EntityId> actors;
  RelationId relation;
  std::vector<EntityId> recipients;
  Timestamp t;
  std::vector<QualifierPair> qualifiers;
  std::uint64_t seq = 0;

  bool operator==(const Fact&) const = default;
};

enum class EdgeType : std::uint8_t { Standard, BidirectionalPair, Group, Set2Set };

inline constexpr EdgeType kAllEdgeTypes[] = {EdgeType::Standard, EdgeType::BidirectionalPair,
                                             EdgeType::Group, EdgeType::Set2Set};

std::string_view to_string(EdgeType type);

// Builds a fact, removing repeated entities within each side. Throws
// Error(EmptyActors), Error(TooFewEntities), or Error(UnknownSymbol) when a
// vocab is given and an id is outside it.
Fact make_fact(std::vector<EntityId> actors, RelationId relation, std::vector<EntityId> recipients,
               Timestamp t, std::vector<QualifierPair> qualifiers, std::uint64_t seq = 0,
               const Vocab* vocab = nullptr);

// ((s, r, o, t), Q) -> ({s}, r, {o}, t, Q)
Fact from_htkg_quadruple(EntityId subject, RelationId relation, EntityId object, Timestamp t,
                         std::vector<QualifierPair> qualifiers, std::uint64_t seq = 0,
                         const Vocab* vocab = nullptr);

// Only meaningful for sizes of a valid fact (actors >= 1, total > 1).
EdgeType classify_edge_type(std::size_t num_actors, std::size_t num_recipients);

inline EdgeType classify_edge_type(const Fact& f) {
  return classify_edge_type(f.actors.size(), f.recipients.size());
}

// Empty recipients read as a mutual relation among the actors.
inline bool is_bidirectional(const Fact& f) { return f.recipients.empty(); }

bool has_self_loop(const Fact& f);

// actors ∪ recipients, sorted by id.
std::vector<EntityId> primary_entities(const Fact& f);

// Set equality on duplicate-free id lists, ignoring order.
bool same_set(const std::vector<EntityId>& a, const std::vector<EntityId>& b);

}  // namespace htkgh
