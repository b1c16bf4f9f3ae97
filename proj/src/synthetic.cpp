#include "htkgh/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "htkgh/error.hpp"
#include "htkgh/random.hpp"

namespace htkgh {

namespace {

constexpr std::array<std::string_view, 18> kEventTypes = {
    "agree",    "consult", "support", "concede", "cooperate", "aid",
    "retreat",  "request", "accuse",  "reject",  "threaten",  "protest",
    "sanction", "mobilize", "coerce", "assault", "seize",     "expel"};

constexpr std::array<std::string_view, 6> kModes = {"ceasefire", "strike",  "demonstrate",
                                                    "economic",  "military", "diplomatic"};

constexpr std::array<std::string_view, 9> kSectors = {"GOV", "MIL", "CVL", "JUD", "LEG",
                                                      "BUS", "MED", "REB", "POL"};

constexpr std::array<std::string_view, 12> kContexts = {
    "military",  "legislative", "economic", "diplomatic", "humanitarian", "cyber",
    "election",  "terrorism",   "environment", "health",  "refugees",     "maritime"};

struct Signature {
  std::vector<std::uint32_t> actors;  // sorted
  std::vector<std::uint32_t> recipients;
  auto operator<=>(const Signature&) const = default;
};

struct Draft {
  std::int32_t day;
  std::vector<std::uint32_t> actors;
  std::uint32_t relation;
  std::vector<std::uint32_t> recipients;
  std::optional<std::uint32_t> location;  // country index
  std::vector<std::uint32_t> contexts;
  EdgeType planted;
  enum class Role { Noise, Chain, ChainFirst, Group } role = Role::Noise;
};

Signature signature_of(std::vector<std::uint32_t> a, std::vector<std::uint32_t> r) {
  std::sort(a.begin(), a.end());
  std::sort(r.begin(), r.end());
  return {std::move(a), std::move(r)};
}

class Generator {
 public:
  explicit Generator(const SyntheticConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    countries_ = std::max<std::size_t>(1, (cfg.entities + 2) / 3);
    for (std::size_t i = 0; i < cfg.entities; ++i) {
      const std::size_t layer = i / countries_;
      std::optional<std::string> sector;
      if (layer > 0) sector = std::string(kSectors[(layer - 1) % kSectors.size()]);
      entity_country_.push_back(static_cast<std::uint32_t>(i % countries_));
      entity_sector_.push_back(sector);
    }
    for (std::size_t j = 0; j < cfg.relations; ++j) {
      std::string label(kEventTypes[j % kEventTypes.size()]);
      const std::size_t layer = j / kEventTypes.size();
      if (layer > 0) {
        label += " (";
        label += kModes[(layer - 1) % kModes.size()];
        if (layer > kModes.size()) label += std::to_string(layer);
        label += ')';
      }
      relation_labels_.push_back(std::move(label));
    }
    for (std::size_t c = 0; c < cfg.contexts; ++c) {
      std::string label(kContexts[c % kContexts.size()]);
      if (c >= kContexts.size()) label += std::to_string(c / kContexts.size());
      context_labels_.push_back(std::move(label));
    }
    if (cfg.regime == Regime::Mixed) {
      for (std::size_t i = 0; i < cfg.entities; ++i) {
        preferred_.push_back(static_cast<std::uint32_t>(rng_.below(cfg.relations)));
      }
    }
  }

  SyntheticDataset run() {
    std::vector<Draft> drafts;
    drafts.reserve(cfg_.facts);
    const bool chains = cfg_.regime != Regime::Uniform;
    if (chains) plant_chains(drafts);
    if (cfg_.regime == Regime::Mixed) plant_groups(drafts, cfg_.facts / 10);
    while (drafts.size() < cfg_.facts) drafts.push_back(noise());
    return finish(std::move(drafts));
  }

 private:
  std::string country_name(std::uint32_t c) const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "Country%03u", c);
    return buf;
  }

  std::string entity_label_of(std::uint32_t e) const {
    return entity_label(country_name(entity_country_[e]), entity_sector_[e]);
  }

  std::vector<std::uint32_t> distinct_entities(std::size_t n, const std::vector<std::uint32_t>& avoid = {}) {
    std::vector<std::uint32_t> out;
    while (out.size() < n) {
      const auto e = static_cast<std::uint32_t>(rng_.below(cfg_.entities));
      if (std::find(out.begin(), out.end(), e) != out.end()) continue;
      if (std::find(avoid.begin(), avoid.end(), e) != avoid.end()) continue;
      out.push_back(e);
    }
    return out;
  }

  EdgeType draw_edge_type() {
    const double u = rng_.unit();
    const std::size_t n = cfg_.entities;
    EdgeType t = EdgeType::Standard;
    if (u < 0.70) t = EdgeType::Standard;
    else if (u < 0.78) t = EdgeType::BidirectionalPair;
    else if (u < 0.85) t = EdgeType::Group;
    else t = EdgeType::Set2Set;
    if (n < 3 && (t == EdgeType::Group || t == EdgeType::Set2Set)) t = EdgeType::Standard;
    return t;
  }

  void draw_shape(EdgeType t, std::vector<std::uint32_t>& actors, std::vector<std::uint32_t>& recipients) {
    std::size_t na = 1, nr = 1;
    const std::size_t cap = std::min<std::size_t>(cfg_.entities, 6);
    switch (t) {
      case EdgeType::Standard: na = 1; nr = 1; break;
      case EdgeType::BidirectionalPair: na = 2; nr = 0; break;
      case EdgeType::Group: na = 3 + rng_.below(std::max<std::size_t>(1, cap - 2)); nr = 0; break;
      case EdgeType::Set2Set: {
        do {
          na = 1 + rng_.below(3);
          nr = 1 + rng_.below(3);
        } while (na + nr < 3 || na + nr > cfg_.entities);
        break;
      }
    }
    na = std::min(na, cfg_.entities);
    actors = distinct_entities(na);
    recipients = distinct_entities(nr, actors);
  }

  void draw_qualifiers(Draft& d) {
    if (rng_.chance(0.7)) d.location = static_cast<std::uint32_t>(rng_.below(countries_));
    if (cfg_.contexts > 0) {
      const std::size_t k = rng_.below(3);
      for (std::size_t i = 0; i < k; ++i) {
        const auto c = static_cast<std::uint32_t>(rng_.below(cfg_.contexts));
        if (std::find(d.contexts.begin(), d.contexts.end(), c) == d.contexts.end()) d.contexts.push_back(c);
      }
    }
  }

  Draft noise() {
    for (;;) {
      Draft d;
      d.day = static_cast<std::int32_t>(rng_.below(static_cast<std::uint64_t>(cfg_.days)));
      d.planted = draw_edge_type();
      draw_shape(d.planted, d.actors, d.recipients);
      if (chain_signatures_.contains(signature_of(d.actors, d.recipients))) continue;
      if (cfg_.regime == Regime::Mixed && rng_.chance(cfg_.bias)) {
        d.relation = preferred_[d.actors.front()];
      } else {
        d.relation = static_cast<std::uint32_t>(rng_.below(cfg_.relations));
      }
      draw_qualifiers(d);
      return d;
    }
  }

  void plant_chains(std::vector<Draft>& drafts) {
    const auto budget = static_cast<std::size_t>(std::floor(cfg_.chain_share * static_cast<double>(cfg_.facts)));
    const std::int32_t period = cfg_.copy_period;
    std::size_t attempts = 0;
    while (drafts.size() < budget && attempts++ < 64 * (budget + 1)) {
      Draft base;
      base.planted = (cfg_.entities >= 3 && rng_.chance(0.5)) ? EdgeType::Set2Set : EdgeType::Standard;
      if (base.planted == EdgeType::Set2Set) {
        base.actors = distinct_entities(2);
        base.recipients = distinct_entities(1, base.actors);
      } else {
        base.actors = distinct_entities(1);
        base.recipients = distinct_entities(1, base.actors);
      }
      auto sig = signature_of(base.actors, base.recipients);
      if (chain_signatures_.contains(sig)) continue;
      chain_signatures_.insert(sig);
      base.relation = static_cast<std::uint32_t>(rng_.below(cfg_.relations));
      draw_qualifiers(base);

      const std::int32_t span = std::max<std::int32_t>(1, cfg_.days / 4);
      const auto first = static_cast<std::int32_t>(rng_.below(static_cast<std::uint64_t>(cfg_.days)));
      PlantedChain chain;
      for (const auto e : base.actors) chain.actors.push_back(entity_label_of(e));
      for (const auto e : base.recipients) chain.recipients.push_back(entity_label_of(e));
      chain.relation = relation_labels_[base.relation];
      chain.first_day = first;
      chain.period = period;
      for (std::int32_t day = first; day < cfg_.days && day < first + span && drafts.size() < budget;
           day += period) {
        Draft d = base;
        d.day = day;
        d.role = chain.occurrences == 0 ? Draft::Role::ChainFirst : Draft::Role::Chain;
        drafts.push_back(std::move(d));
        ++chain.occurrences;
      }
      truth_.chains.push_back(std::move(chain));
    }
  }

  void plant_groups(std::vector<Draft>& drafts, std::size_t budget) {
    if (cfg_.entities < 3) return;
    const std::size_t target = std::min(cfg_.facts, drafts.size() + budget);
    while (drafts.size() < target) {
      Draft base;
      base.planted = EdgeType::Group;
      base.actors = distinct_entities(3 + rng_.below(std::min<std::size_t>(2, cfg_.entities - 2)));
      base.relation = static_cast<std::uint32_t>(rng_.below(cfg_.relations));
      draw_qualifiers(base);
      const auto period = static_cast<std::int32_t>(5 + rng_.below(16));
      const auto first = static_cast<std::int32_t>(rng_.below(static_cast<std::uint64_t>(cfg_.days)));
      for (std::int32_t day = first; day < cfg_.days && drafts.size() < target; day += period) {
        Draft d = base;
        d.day = day;
        d.role = Draft::Role::Group;
        drafts.push_back(std::move(d));
        if (rng_.chance(0.1)) break;
      }
    }
  }

  SyntheticDataset finish(std::vector<Draft> drafts) {
    std::stable_sort(drafts.begin(), drafts.end(),
                     [](const Draft& a, const Draft& b) { return a.day < b.day; });
    const Timestamp start = Timestamp::from_iso(cfg_.start_date);
    Vocab vocab;
    std::vector<Fact> facts;
    facts.reserve(drafts.size());
    for (std::size_t i = 0; i < drafts.size(); ++i) {
      const Draft& d = drafts[i];
      auto entity = [&](std::uint32_t e) {
        return vocab.entities.intern(EntityKind::Country, country_name(entity_country_[e]), entity_sector_[e]);
      };
      std::vector<EntityId> actors, recipients;
      for (auto e : d.actors) actors.push_back(entity(e));
      for (auto e : d.recipients) recipients.push_back(entity(e));
      std::vector<QualifierPair> quals;
      if (d.location) {
        quals.push_back({kLocation, vocab.entities.intern(EntityKind::Country, country_name(*d.location), std::nullopt)});
      }
      for (auto c : d.contexts) {
        quals.push_back({kContext, vocab.entities.intern(EntityKind::Context, context_labels_[c], std::nullopt)});
      }
      truth_.qualifier_total += quals.size();
      truth_.edge_type_counts[static_cast<std::size_t>(d.planted)]++;
      if (d.role == Draft::Role::Chain) truth_.planted_copy_queries.push_back(i);
      if (d.role == Draft::Role::Group) truth_.group_event_facts.push_back(i);
      const RelationId rel = vocab.relations.intern(relation_labels_[d.relation]);
      facts.push_back(make_fact(std::move(actors), rel, std::move(recipients),
                                Timestamp{start.day() + d.day}, std::move(quals), i));
    }
    if (cfg_.regime == Regime::Mixed) {
      for (std::size_t e = 0; e < cfg_.entities; ++e) {
        truth_.preferred_relation[entity_label_of(static_cast<std::uint32_t>(e))] = relation_labels_[preferred_[e]];
      }
    }
    truth_.regime = cfg_.regime;
    truth_.seed = cfg_.seed;
    return {Dataset::assemble(std::move(facts), vocab,
                              "synthetic:" + std::string(to_string(cfg_.regime)) + ":seed=" + std::to_string(cfg_.seed)),
            std::move(truth_)};
  }

  const SyntheticConfig& cfg_;
  Rng rng_;
  std::size_t countries_ = 1;
  std::vector<std::uint32_t> entity_country_;
  std::vector<std::optional<std::string>> entity_sector_;
  std::vector<std::string> relation_labels_;
  std::vector<std::string> context_labels_;
  std::vector<std::uint32_t> preferred_;
  std::set<Signature> chain_signatures_;
  SyntheticTruth truth_;
};

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Uniform: return "uniform";
    case Regime::CopyChain: return "copy-chain";
    case Regime::Mixed: return "mixed";
  }
  return "unknown";
}

Regime parse_regime(std::string_view name) {
  if (name == "uniform") return Regime::Uniform;
  if (name == "copy-chain") return Regime::CopyChain;
  if (name == "mixed") return Regime::Mixed;
  throw Error(Errc::ConfigInvalid, "unknown regime '" + std::string(name) + "'");
}

void SyntheticConfig::validate() const {
  auto bad = [](const std::string& what) { return Error(Errc::ConfigInvalid, what); };
  if (facts < 1) throw bad("facts must be >= 1");
  if (entities < 2) throw bad("entities must be >= 2 (a fact needs two primary entities)");
  if (relations < 1) throw bad("relations must be >= 1");
  if (days < 1) throw bad("days must be >= 1");
  if (copy_period < 1) throw bad("copy_period must be >= 1");
  if (!(chain_share >= 0.0 && chain_share <= 1.0)) throw bad("chain_share must lie in [0, 1]");
  if (!(bias >= 0.0 && bias <= 1.0)) throw bad("bias must lie in [0, 1]");
  if (!Timestamp::try_from_iso(start_date)) throw bad("start_date must be YYYY-MM-DD");
}

SyntheticDataset generate_synthetic(const SyntheticConfig& config) {
  config.validate();
  return Generator(config).run();
}

std::string truth_to_json(const SyntheticTruth& truth) {
  nlohmann::ordered_json j;
  j["regime"] = to_string(truth.regime);
  j["seed"] = truth.seed;
  auto chains = nlohmann::ordered_json::array();
  for (const auto& c : truth.chains) {
    chains.push_back({{"actors", c.actors},
                      {"recipients", c.recipients},
                      {"relation", c.relation},
                      {"first_day", c.first_day},
                      {"period", c.period},
                      {"occurrences", c.occurrences}});
  }
  j["chains"] = std::move(chains);
  j["planted_copy_queries"] = truth.planted_copy_queries;
  j["group_event_facts"] = truth.group_event_facts;
  j["preferred_relation"] = truth.preferred_relation;
  nlohmann::ordered_json counts;
  for (EdgeType t : kAllEdgeTypes) counts[std::string(to_string(t))] = truth.edge_type_counts[static_cast<std::size_t>(t)];
  j["edge_type_counts"] = std::move(counts);
  j["qualifier_total"] = truth.qualifier_total;
  return j.dump(2);
}

}  // namespace htkgh
