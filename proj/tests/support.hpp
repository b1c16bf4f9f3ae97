#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "htkgh/fact_io.hpp"
#include "htkgh/random.hpp"
#include "htkgh/retrieval.hpp"

namespace support {

using namespace htkgh;

inline Dataset from_text(const std::string& text) {
  std::istringstream in(text);
  return read_fact_file(in);
}

inline std::string canonical(const Dataset& d) {
  std::ostringstream out;
  write_fact_file(out, d);
  return out.str();
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("htkgh_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

// A query built from a random fact, with its entities, qualifiers and day
// perturbed now and then so queries also land on days and entity sets the
// data never holds.
inline RelationQuery random_query(const Dataset& d, Rng& rng, std::uint64_t qid) {
  const auto& facts = d.facts();
  const auto& f = facts[rng.below(facts.size())];
  RelationQuery q = query_from_fact(f, qid);
  const auto n_entities = d.vocab().entities.size();
  if (rng.chance(0.3)) {
    q.actors = {EntityId{static_cast<std::uint32_t>(rng.below(n_entities))}};
    EntityId other{static_cast<std::uint32_t>(rng.below(n_entities))};
    q.recipients = other == q.actors[0] ? std::vector<EntityId>{} : std::vector<EntityId>{other};
    if (q.recipients.empty()) q.actors.push_back(EntityId{(other.value + 1) % static_cast<std::uint32_t>(n_entities)});
  }
  if (rng.chance(0.2)) q.qualifiers.clear();
  if (rng.chance(0.2)) {
    const auto span = facts.back().t.day() - facts.front().t.day() + 20;
    q.t = Timestamp(facts.front().t.day() - 10 + static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(span))));
  }
  return q;
}

}  // namespace support
