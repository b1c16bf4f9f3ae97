#include "htkgh/fact.hpp"

#include <algorithm>

#include "htkgh/error.hpp"

namespace htkgh {

namespace {

void dedup_in_place(std::vector<EntityId>& ids) {
  std::vector<EntityId> seen;
  seen.reserve(ids.size());
  for (EntityId id : ids) {
    if (std::find(seen.begin(), seen.end(), id) == seen.end()) seen.push_back(id);
  }
  ids = std::move(seen);
}

void check_entity(const Vocab& vocab, EntityId id) {
  if (!vocab.entities.contains(id)) {
    throw Error(Errc::UnknownSymbol, "entity id " + std::to_string(id.value) + " not in vocab");
  }
}

}  // namespace

std::string_view to_string(EdgeType type) {
  switch (type) {
    case EdgeType::Standard: return "Standard";
    case EdgeType::BidirectionalPair: return "BidirectionalPair";
    case EdgeType::Group: return "Group";
    case EdgeType::Set2Set: return "Set2Set";
  }
  return "Unknown";
}

Fact make_fact(std::vector<EntityId> actors, RelationId relation, std::vector<EntityId> recipients,
               Timestamp t, std::vector<QualifierPair> qualifiers, std::uint64_t seq,
               const Vocab* vocab) {
  dedup_in_place(actors);
  dedup_in_place(recipients);
  if (actors.empty()) throw Error(Errc::EmptyActors, "a fact needs at least one actor");
  if (actors.size() + recipients.size() <= 1) {
    throw Error(Errc::TooFewEntities, "|actors| + |recipients| must exceed 1");
  }
  if (vocab) {
    for (EntityId id : actors) check_entity(*vocab, id);
    for (EntityId id : recipients) check_entity(*vocab, id);
    if (!vocab->relations.contains(relation)) {
      throw Error(Errc::UnknownSymbol,
                  "relation id " + std::to_string(relation.value) + " not in vocab");
    }
    for (const auto& q : qualifiers) {
      if (!vocab->qualifier_relations.contains(q.qrel)) {
        throw Error(Errc::UnknownSymbol,
                    "qualifier relation id " + std::to_string(q.qrel.value) + " not in vocab");
      }
      check_entity(*vocab, q.value);
    }
  }
  return Fact{std::move(actors), relation, std::move(recipients), t, std::move(qualifiers), seq};
}

Fact from_htkg_quadruple(EntityId subject, RelationId relation, EntityId object, Timestamp t,
                         std::vector<QualifierPair> qualifiers, std::uint64_t seq,
                         const Vocab* vocab) {
  // A self-loop (s == o) keeps both singleton sides; validate_dataset flags it.
  return make_fact({subject}, relation, {object}, t, std::move(qualifiers), seq, vocab);
}

EdgeType classify_edge_type(std::size_t num_actors, std::size_t num_recipients) {
  if (num_recipients == 0) {
    return num_actors == 2 ? EdgeType::BidirectionalPair : EdgeType::Group;
  }
  if (num_actors == 1 && num_recipients == 1) return EdgeType::Standard;
  return EdgeType::Set2Set;
}

bool has_self_loop(const Fact& f) {
  for (EntityId a : f.actors) {
    if (std::find(f.recipients.begin(), f.recipients.end(), a) != f.recipients.end()) return true;
  }
  return false;
}

std::vector<EntityId> primary_entities(const Fact& f) {
  std::vector<EntityId> out;
  out.reserve(f.actors.size() + f.recipients.size());
  out.insert(out.end(), f.actors.begin(), f.actors.end());
  out.insert(out.end(), f.recipients.begin(), f.recipients.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool same_set(const std::vector<EntityId>& a, const std::vector<EntityId>& b) {
  if (a.size() != b.size()) return false;
  for (EntityId id : a) {
    if (std::find(b.begin(), b.end(), id) == b.end()) return false;
  }
  return true;
}

}  // namespace htkgh
