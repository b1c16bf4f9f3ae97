#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "htkgh/dataset.hpp"

namespace htkgh {

struct StatsReport {
  std::size_t facts = 0;
  std::array<std::size_t, 4> edge_type_counts{};  // indexed by EdgeType
  std::vector<std::pair<std::string, std::size_t>> top_entities;
  std::vector<std::pair<std::string, std::size_t>> top_relations;
  std::map<int, std::size_t> per_year;
  std::size_t qualifier_total = 0;
  double qualifier_mean = 0.0;
  std::map<std::size_t, std::size_t> entity_count_histogram;  // |actors| + |recipients| -> facts

  std::size_t count(EdgeType t) const { return edge_type_counts[static_cast<std::size_t>(t)]; }

  // Three-way view used in published figures: BidirectionalPair folds into Group.
  std::size_t merged_group() const { return count(EdgeType::Group) + count(EdgeType::BidirectionalPair); }

  // Share of facts that are Group, BidirectionalPair or Set2Set.
  double non_standard_share() const;

  bool operator==(const StatsReport&) const = default;
};

// Entity counts are per fact over actors ∪ recipients. Ties in the top lists
// break by label.
StatsReport compute_stats(const Dataset& d, std::size_t k);

// stats.csv holds one block per section (EDGE_TYPES, TOP_ENTITIES,
// TOP_RELATIONS, PER_YEAR, QUALIFIERS, ENTITY_COUNT_HIST). Each block is a
// "#SECTION" line followed by "name,value" rows.
void write_stats_csv(std::ostream& out, const StatsReport& r);
StatsReport read_stats_csv(std::istream& in);

// Writes stats.csv and, when `plots` is set, one SVG bar chart per
// histogram. Returns the paths written.
std::vector<std::filesystem::path> emit_stats(const StatsReport& r, const std::filesystem::path& out_dir,
                                              bool plots = true);

}  // namespace htkgh
