#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "htkgh/dataset.hpp"

namespace htkgh {

// Entities: shuffle countries only (actors, recipients and location values
// move together). All: additionally shuffle primary relation labels.
enum class AnonMode { Entities, All };

std::string_view to_string(AnonMode mode);
AnonMode parse_anon_mode(std::string_view name);  // throws Error(ConfigInvalid)

struct AnonymizationMap {
  std::uint64_t seed = 0;
  AnonMode mode = AnonMode::Entities;
  std::map<std::string, std::string> countries;
  std::optional<std::map<std::string, std::string>> relations;  // present iff mode == All

  AnonymizationMap inverse() const;
  bool is_bijective() const;

  bool operator==(const AnonymizationMap&) const = default;
};

struct AnonOptions {
  bool derangement = false;  // forbid fixed points when the domain has more than one element
};

// Seeded uniform permutations over the dataset's distinct countries (taken
// from every Country entity) and, for mode All, its relation labels.
AnonymizationMap build_maps(const Dataset& d, std::uint64_t seed, AnonMode mode,
                            const AnonOptions& options = {});

// Relabels the vocabulary: "C (S)" -> "perm(C) (S)"; context and other
// non-location qualifier values stay as they are. Ids, facts, order and
// timestamps are untouched. Throws Error(UncoveredSymbol) when a country or
// (mode All) relation is missing from the map.
Dataset apply_anonymization(const Dataset& d, const AnonymizationMap& m);

std::string map_to_json(const AnonymizationMap& m);
AnonymizationMap map_from_json(const std::string& text);
void write_map_file(const std::filesystem::path& path, const AnonymizationMap& m);
AnonymizationMap read_map_file(const std::filesystem::path& path);

}  // namespace htkgh
