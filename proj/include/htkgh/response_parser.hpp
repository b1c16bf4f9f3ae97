#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "htkgh/prompt.hpp"

namespace htkgh {

enum class MatchedBy { Raw, Index, None };

std::string_view to_string(MatchedBy m);

// `prediction` is empty exactly when matched_by is None (a misformat).
struct ParsedAnswer {
  std::optional<RelationId> prediction;
  MatchedBy matched_by = MatchedBy::None;

  bool misformatted() const { return matched_by == MatchedBy::None; }
  bool operator==(const ParsedAnswer&) const = default;
};

// Label match first: the earliest case-insensitive occurrence of any
// candidate label, the longest label when two start at the same offset.
// Otherwise the first integer token i with 1 <= i <= |candidates| picks
// candidates[i - 1]. Total on arbitrary bytes.
ParsedAnswer parse_response(std::string_view text, std::span<const Candidate> candidates);

}  // namespace htkgh
