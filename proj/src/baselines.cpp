#include "htkgh/baselines.hpp"

#include <algorithm>
#include <unordered_map>

#include "htkgh/error.hpp"

namespace htkgh {

namespace {

bool same_qualifiers(std::vector<QualifierPair> a, std::vector<QualifierPair> b) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

std::string_view to_string(Heuristic h) {
  switch (h) {
    case Heuristic::Frequency: return "frequency";
    case Heuristic::Recency: return "recency";
    case Heuristic::Copy: return "copy";
  }
  return "unknown";
}

Heuristic parse_heuristic(std::string_view name) {
  if (name == "frequency") return Heuristic::Frequency;
  if (name == "recency") return Heuristic::Recency;
  if (name == "copy") return Heuristic::Copy;
  throw Error(Errc::ConfigInvalid, "unknown heuristic '" + std::string(name) + "'");
}

HeuristicPrediction frequency(const HistoryContext& hc) {
  struct Tally {
    std::size_t count = 0;
    std::size_t last = 0;
  };
  std::unordered_map<RelationId, Tally> tallies;
  for (std::size_t i = 0; i < hc.facts.size(); ++i) {
    auto& t = tallies[hc.facts[i].relation];
    ++t.count;
    t.last = i;
  }
  HeuristicPrediction best;
  Tally best_tally;
  for (const auto& [rel, t] : tallies) {
    if (!best.relation || t.count > best_tally.count ||
        (t.count == best_tally.count && t.last > best_tally.last)) {
      best.relation = rel;
      best_tally = t;
    }
  }
  return best;
}

HeuristicPrediction recency(const HistoryContext& hc) {
  if (hc.facts.empty()) return {};
  return {hc.facts.back().relation};
}

HeuristicPrediction copy(const HistoryContext& hc, const RelationQuery& q, const CopyOptions& options) {
  for (auto it = hc.facts.rbegin(); it != hc.facts.rend(); ++it) {
    if (!same_set(it->actors, q.actors) || !same_set(it->recipients, q.recipients)) continue;
    if (options.include_qualifiers && !same_qualifiers(it->qualifiers, q.qualifiers)) continue;
    return {it->relation};
  }
  return {};
}

HeuristicPrediction predict(Heuristic h, const HistoryContext& hc, const CopyOptions& options) {
  switch (h) {
    case Heuristic::Frequency: return frequency(hc);
    case Heuristic::Recency: return recency(hc);
    case Heuristic::Copy: return copy(hc, hc.query, options);
  }
  return {};
}

}  // namespace htkgh
