#include "htkgh/anonymize.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "htkgh/error.hpp"
#include "htkgh/random.hpp"

namespace htkgh {

namespace {

std::map<std::string, std::string> permutation(const std::set<std::string>& domain, Rng& rng,
                                               bool derangement) {
  std::vector<std::string> keys(domain.begin(), domain.end());
  std::vector<std::string> values = keys;
  const bool can_derange = derangement && keys.size() > 1;
  for (;;) {
    rng.shuffle(std::span<std::string>(values));
    if (!can_derange) break;
    bool fixed = false;
    for (std::size_t i = 0; i < keys.size() && !fixed; ++i) fixed = keys[i] == values[i];
    if (!fixed) break;
  }
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < keys.size(); ++i) out.emplace(keys[i], values[i]);
  return out;
}

std::map<std::string, std::string> invert(const std::map<std::string, std::string>& m) {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : m) out.emplace(v, k);
  return out;
}

bool bijective(const std::map<std::string, std::string>& m) {
  std::set<std::string> keys, values;
  for (const auto& [k, v] : m) {
    keys.insert(k);
    values.insert(v);
  }
  return values.size() == m.size() && keys == values;
}

}  // namespace

std::string_view to_string(AnonMode mode) { return mode == AnonMode::All ? "all" : "entities"; }

AnonMode parse_anon_mode(std::string_view name) {
  if (name == "entities") return AnonMode::Entities;
  if (name == "all") return AnonMode::All;
  throw Error(Errc::ConfigInvalid, "unknown anonymization mode '" + std::string(name) + "'");
}

AnonymizationMap AnonymizationMap::inverse() const {
  AnonymizationMap inv;
  inv.seed = seed;
  inv.mode = mode;
  inv.countries = invert(countries);
  if (relations) inv.relations = invert(*relations);
  return inv;
}

bool AnonymizationMap::is_bijective() const {
  if (!bijective(countries)) return false;
  if (relations && !bijective(*relations)) return false;
  return (mode == AnonMode::All) == relations.has_value();
}

AnonymizationMap build_maps(const Dataset& d, std::uint64_t seed, AnonMode mode,
                            const AnonOptions& options) {
  std::set<std::string> countries;
  for (const auto& e : d.vocab().entities.entries()) {
    if (e.kind == EntityKind::Country) countries.insert(e.base);
  }
  Rng rng(seed);
  AnonymizationMap m;
  m.seed = seed;
  m.mode = mode;
  m.countries = permutation(countries, rng, options.derangement);
  if (mode == AnonMode::All) {
    const auto& labels = d.vocab().relations.labels();
    m.relations = permutation(std::set<std::string>(labels.begin(), labels.end()), rng, options.derangement);
  }
  return m;
}

Dataset apply_anonymization(const Dataset& d, const AnonymizationMap& m) {
  const Vocab& in = d.vocab();
  Vocab out;
  for (std::size_t i = 0; i < in.entities.size(); ++i) {
    const EntityInfo& e = in.entities.entries()[i];
    std::string base = e.base;
    if (e.kind == EntityKind::Country) {
      auto it = m.countries.find(e.base);
      if (it == m.countries.end()) throw Error(Errc::UncoveredSymbol, "country '" + e.base + "' not in map");
      base = it->second;
    }
    const EntityId id = out.entities.intern(e.kind, base, e.sector);
    if (id.value != i) throw Error(Errc::UncoveredSymbol, "country map is not injective at '" + e.base + "'");
  }
  for (const auto& label : in.relations.labels()) {
    std::string mapped = label;
    if (m.mode == AnonMode::All) {
      if (!m.relations) throw Error(Errc::UncoveredSymbol, "mode 'all' without a relation map");
      auto it = m.relations->find(label);
      if (it == m.relations->end()) throw Error(Errc::UncoveredSymbol, "relation '" + label + "' not in map");
      mapped = it->second;
    }
    const RelationId id = out.relations.intern(mapped);
    if (id.value + 1 != out.relations.size()) {
      throw Error(Errc::UncoveredSymbol, "relation map is not injective at '" + label + "'");
    }
  }
  for (const auto& label : in.qualifier_relations.labels()) out.qualifier_relations.intern(label);

  std::string meta = d.meta();
  meta += meta.empty() ? "" : "+";
  meta += "anon:" + std::string(to_string(m.mode)) + ":seed=" + std::to_string(m.seed);
  return Dataset(d.facts(), std::move(out), std::move(meta));
}

std::string map_to_json(const AnonymizationMap& m) {
  nlohmann::ordered_json j;
  j["seed"] = m.seed;
  j["mode"] = to_string(m.mode);
  j["countries"] = m.countries;
  if (m.relations) {
    j["relations"] = *m.relations;
  } else {
    j["relations"] = nullptr;
  }
  return j.dump(2);
}

AnonymizationMap map_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    AnonymizationMap m;
    m.seed = j.at("seed").get<std::uint64_t>();
    m.mode = parse_anon_mode(j.at("mode").get<std::string>());
    m.countries = j.at("countries").get<std::map<std::string, std::string>>();
    if (j.contains("relations") && !j["relations"].is_null()) {
      m.relations = j["relations"].get<std::map<std::string, std::string>>();
    }
    if (!m.is_bijective()) throw Error(Errc::ConfigInvalid, "map file is not a bijection");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, std::string("map file: ") + e.what());
  }
}

void write_map_file(const std::filesystem::path& path, const AnonymizationMap& m) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  out << map_to_json(m) << '\n';
}

AnonymizationMap read_map_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return map_from_json(ss.str());
}

}  // namespace htkgh
