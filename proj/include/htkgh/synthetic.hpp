#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "htkgh/dataset.hpp"

namespace htkgh {

// Desk-scale stand-in for a real event feed.
//   Uniform   : independent random facts.
//   CopyChain : fixed (actors, relation, recipients, qualifiers) chains that
//               recur every `copy_period` days, plus random noise.
//   Mixed     : copy chains, recurring group events and noise whose relation
//               follows a per-entity preference.
enum class Regime { Uniform, CopyChain, Mixed };

std::string_view to_string(Regime regime);
Regime parse_regime(std::string_view name);  // throws Error(ConfigInvalid)

struct SyntheticConfig {
  std::size_t entities = 60;
  std::size_t relations = 12;
  std::size_t facts = 5000;
  std::uint64_t seed = 1;
  Regime regime = Regime::Mixed;
  std::string start_date = "2018-01-01";
  std::int32_t days = 2400;
  std::int32_t copy_period = 3;
  std::size_t contexts = 8;
  double chain_share = 0.2;  // fraction of facts that belong to copy chains
  double bias = 0.6;         // Mixed: probability a noise fact uses its lead actor's preferred relation

  // Throws Error(ConfigInvalid) on out-of-range values.
  void validate() const;
};

struct PlantedChain {
  std::vector<std::string> actors;
  std::vector<std::string> recipients;
  std::string relation;
  std::int32_t first_day = 0;
  std::int32_t period = 0;
  std::size_t occurrences = 0;
};

// Ground truth recorded while generating, independent of any analysis code.
struct SyntheticTruth {
  Regime regime = Regime::Mixed;
  std::uint64_t seed = 0;
  std::vector<PlantedChain> chains;
  // seq of every chain occurrence after the first: the previous occurrence
  // is the newest fact with the same actor and recipient sets.
  std::vector<std::uint64_t> planted_copy_queries;
  std::vector<std::uint64_t> group_event_facts;
  std::map<std::string, std::string> preferred_relation;  // Mixed only
  std::array<std::size_t, 4> edge_type_counts{};           // indexed by EdgeType
  std::size_t qualifier_total = 0;
};

struct SyntheticDataset {
  Dataset dataset;
  SyntheticTruth truth;
};

SyntheticDataset generate_synthetic(const SyntheticConfig& config);

std::string truth_to_json(const SyntheticTruth& truth);

}  // namespace htkgh
