#pragma once

// Brute-force reference implementations used to check the indexed and
// optimised code paths. They work directly from the definitions and share no
// helpers with the library beyond the plain data types.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "htkgh/retrieval.hpp"

namespace oracle {

using namespace htkgh;

inline std::set<std::uint32_t> id_set(const std::vector<EntityId>& v) {
  std::set<std::uint32_t> s;
  for (const auto& e : v) s.insert(e.value);
  return s;
}

inline std::set<std::uint32_t> values_for(const std::vector<QualifierPair>& qs, QualRelId qrel) {
  std::set<std::uint32_t> s;
  for (const auto& q : qs) {
    if (q.qrel == qrel) s.insert(q.value.value);
  }
  return s;
}

inline bool intersects(const std::set<std::uint32_t>& a, const std::set<std::uint32_t>& b) {
  for (const auto x : a) {
    if (b.count(x)) return true;
  }
  return false;
}

inline bool passes(const Fact& f, const RelationQuery& q, const FilterConfig& c) {
  if (c.entity) {
    auto fe = id_set(f.actors);
    for (const auto& e : f.recipients) fe.insert(e.value);
    auto qe = id_set(q.actors);
    for (const auto& e : q.recipients) qe.insert(e.value);
    if (!intersects(fe, qe)) return false;
  }
  if (c.location) {
    const auto ql = values_for(q.qualifiers, kLocation);
    if (!ql.empty() && !intersects(values_for(f.qualifiers, kLocation), ql)) return false;
  }
  if (c.context) {
    const auto qc = values_for(q.qualifiers, kContext);
    if (!qc.empty() && !intersects(values_for(f.qualifiers, kContext), qc)) return false;
  }
  return true;
}

// Every fact strictly before the query that passes, newest first by
// (day, seq), truncated to h and presented oldest first.
inline std::vector<Fact> retrieve(const std::vector<Fact>& facts, const RelationQuery& q, const FilterConfig& c,
                                  std::size_t h) {
  std::vector<Fact> hits;
  for (const auto& f : facts) {
    if (f.t.day() < q.t.day() && passes(f, q, c)) hits.push_back(f);
  }
  std::sort(hits.begin(), hits.end(), [](const Fact& a, const Fact& b) {
    if (a.t.day() != b.t.day()) return a.t.day() > b.t.day();
    return a.seq > b.seq;
  });
  if (hits.size() > h) hits.resize(h);
  std::reverse(hits.begin(), hits.end());
  return hits;
}

// windows[j-1] collects passing facts with tq - j*delta <= t < tq - (j-1)*delta.
inline std::vector<std::vector<Fact>> windows(const std::vector<Fact>& facts, const RelationQuery& q,
                                              std::int32_t delta, std::size_t num_windows,
                                              const FilterConfig& c) {
  std::vector<std::vector<Fact>> out(num_windows);
  const std::int64_t tq = q.t.day();
  for (const auto& f : facts) {
    if (!passes(f, q, c)) continue;
    for (std::size_t j = 1; j <= num_windows; ++j) {
      const std::int64_t lo = tq - static_cast<std::int64_t>(j) * delta;
      const std::int64_t hi = tq - static_cast<std::int64_t>(j - 1) * delta;
      if (lo <= f.t.day() && f.t.day() < hi) out[j - 1].push_back(f);
    }
  }
  for (auto& w : out) {
    std::stable_sort(w.begin(), w.end(), [](const Fact& a, const Fact& b) {
      return std::pair(a.t.day(), a.seq) < std::pair(b.t.day(), b.seq);
    });
  }
  return out;
}

// Highest count wins; among tied relations the one met first when walking
// from the newest fact backwards.
inline std::optional<RelationId> frequency(const std::vector<Fact>& history) {
  if (history.empty()) return std::nullopt;
  std::map<std::uint32_t, std::size_t> counts;
  std::size_t best = 0;
  for (const auto& f : history) best = std::max(best, ++counts[f.relation.value]);
  for (auto it = history.rbegin(); it != history.rend(); ++it) {
    if (counts[it->relation.value] == best) return it->relation;
  }
  return std::nullopt;
}

inline std::optional<RelationId> recency(const std::vector<Fact>& history) {
  if (history.empty()) return std::nullopt;
  return history.back().relation;
}

inline std::optional<RelationId> copy(const std::vector<Fact>& history, const RelationQuery& q,
                                      bool include_qualifiers = false) {
  for (auto it = history.rbegin(); it != history.rend(); ++it) {
    if (id_set(it->actors) != id_set(q.actors) || id_set(it->recipients) != id_set(q.recipients)) continue;
    if (include_qualifiers) {
      auto a = it->qualifiers;
      auto b = q.qualifiers;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) continue;
    }
    return it->relation;
  }
  return std::nullopt;
}

}  // namespace oracle
