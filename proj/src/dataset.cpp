#include "htkgh/dataset.hpp"

#include <algorithm>

namespace htkgh {

namespace {

// Re-interns one fact's symbols in canonical order: actors, relation,
// recipients, then qualifier (relation, value) pairs.
Fact reintern(const Fact& f, const Vocab& from, Vocab& to) {
  auto entity = [&](EntityId id) {
    const EntityInfo& e = from.entities.info(id);
    return to.entities.intern(e.kind, e.base, e.sector);
  };
  Fact out;
  out.t = f.t;
  out.seq = f.seq;
  out.actors.reserve(f.actors.size());
  for (EntityId id : f.actors) out.actors.push_back(entity(id));
  out.relation = to.relations.intern(from.relations.label(f.relation));
  out.recipients.reserve(f.recipients.size());
  for (EntityId id : f.recipients) out.recipients.push_back(entity(id));
  out.qualifiers.reserve(f.qualifiers.size());
  for (const auto& q : f.qualifiers) {
    const QualRelId qrel = to.qualifier_relations.intern(from.qualifier_relations.label(q.qrel));
    out.qualifiers.push_back({qrel, entity(q.value)});
  }
  return out;
}

}  // namespace

Dataset Dataset::assemble(std::vector<Fact> facts, const Vocab& vocab, std::string meta) {
  std::stable_sort(facts.begin(), facts.end(), [](const Fact& a, const Fact& b) {
    if (a.t != b.t) return a.t < b.t;
    return a.seq < b.seq;
  });
  Vocab fresh;
  for (auto& f : facts) f = reintern(f, vocab, fresh);
  return Dataset(std::move(facts), std::move(fresh), std::move(meta));
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::EmptyActors: return "EmptyActors";
    case ViolationKind::TooFewEntities: return "TooFewEntities";
    case ViolationKind::DuplicateEntity: return "DuplicateEntity";
    case ViolationKind::UnknownSymbol: return "UnknownSymbol";
    case ViolationKind::SortOrder: return "SortOrder";
    case ViolationKind::SelfLoop: return "SelfLoop";
  }
  return "Unknown";
}

std::size_t ValidationReport::error_count() const {
  return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                [](const Violation& v) { return v.severity == Severity::Error; }));
}

std::size_t ValidationReport::warning_count() const {
  return violations.size() - error_count();
}

ValidationReport validate_dataset(const Dataset& d) {
  ValidationReport report;
  const Vocab& vocab = d.vocab();
  const auto& facts = d.facts();

  for (std::size_t i = 0; i < facts.size(); ++i) {
    const Fact& f = facts[i];
    auto add = [&](ViolationKind kind, Severity sev, std::string detail) {
      report.violations.push_back({kind, sev, i, f.seq, std::move(detail)});
    };

    if (f.actors.empty()) add(ViolationKind::EmptyActors, Severity::Error, "no actors");
    if (f.actors.size() + f.recipients.size() <= 1) {
      add(ViolationKind::TooFewEntities, Severity::Error, "|actors| + |recipients| <= 1");
    }
    auto has_dup = [](std::vector<EntityId> ids) {
      std::sort(ids.begin(), ids.end());
      return std::adjacent_find(ids.begin(), ids.end()) != ids.end();
    };
    if (has_dup(f.actors)) add(ViolationKind::DuplicateEntity, Severity::Error, "repeated actor");
    if (has_dup(f.recipients)) {
      add(ViolationKind::DuplicateEntity, Severity::Error, "repeated recipient");
    }

    auto check_entity = [&](EntityId id, const char* role) {
      if (!vocab.entities.contains(id)) {
        add(ViolationKind::UnknownSymbol, Severity::Error,
            std::string(role) + " entity id " + std::to_string(id.value) + " >= |E| = " +
                std::to_string(vocab.entities.size()));
      }
    };
    for (EntityId id : f.actors) check_entity(id, "actor");
    for (EntityId id : f.recipients) check_entity(id, "recipient");
    if (!vocab.relations.contains(f.relation)) {
      add(ViolationKind::UnknownSymbol, Severity::Error,
          "relation id " + std::to_string(f.relation.value) + " >= |R| = " +
              std::to_string(vocab.relations.size()));
    }
    for (const auto& q : f.qualifiers) {
      if (!vocab.qualifier_relations.contains(q.qrel)) {
        add(ViolationKind::UnknownSymbol, Severity::Error,
            "qualifier relation id " + std::to_string(q.qrel.value));
      }
      check_entity(q.value, "qualifier");
    }

    if (i > 0) {
      const Fact& prev = facts[i - 1];
      if (f.t < prev.t || (f.t == prev.t && f.seq < prev.seq)) {
        add(ViolationKind::SortOrder, Severity::Error,
            "seq " + std::to_string(f.seq) + " at " + f.t.iso() + " follows seq " +
                std::to_string(prev.seq) + " at " + prev.t.iso());
      }
    }

    if (has_self_loop(f)) {
      add(ViolationKind::SelfLoop, Severity::Warning, "an entity is both actor and recipient");
    }
  }
  return report;
}

}  // namespace htkgh
