#pragma once

#include <optional>
#include <string_view>

#include "htkgh/retrieval.hpp"

namespace htkgh {

// An empty relation means the heuristic abstained; the benchmark scores
// abstentions as incorrect.
struct HeuristicPrediction {
  std::optional<RelationId> relation;

  bool abstained() const { return !relation.has_value(); }
  bool operator==(const HeuristicPrediction&) const = default;
};

enum class Heuristic { Frequency, Recency, Copy };

std::string_view to_string(Heuristic h);
Heuristic parse_heuristic(std::string_view name);  // throws Error(ConfigInvalid)

struct CopyOptions {
  // Also require the qualifier multiset to match the query's.
  bool include_qualifiers = false;
};

// Most frequent relation; a tie goes to the tied relation seen most recently.
HeuristicPrediction frequency(const HistoryContext& hc);

// Relation of the newest fact.
HeuristicPrediction recency(const HistoryContext& hc);

// Relation of the newest fact whose actor and recipient sets equal the query's.
HeuristicPrediction copy(const HistoryContext& hc, const RelationQuery& q, const CopyOptions& options = {});

HeuristicPrediction predict(Heuristic h, const HistoryContext& hc, const CopyOptions& options = {});

}  // namespace htkgh
