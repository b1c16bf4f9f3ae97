// Acceptance suite. Each criterion runs against independent reference code
// and its own time budget, and prints one PASS or FAIL line. The exit status
// is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "htkgh/anonymize.hpp"
#include "htkgh/baselines.hpp"
#include "htkgh/error.hpp"
#include "htkgh/harness.hpp"
#include "htkgh/synthetic.hpp"
#include "htkgh/test_set.hpp"
#include "oracles.hpp"
#include "parser_golden.hpp"
#include "support.hpp"

using namespace htkgh;

namespace {

// Thrown by check() so a criterion stops at its first counterexample.
struct Mismatch {
  std::string what;
};

void check(bool ok, const std::string& what) {
  if (!ok) throw Mismatch{what};
}

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<void()> body;
};

// ---- structural gate ------------------------------------------------------

void structural_gate() {
  Vocab v;
  for (int i = 0; i < 6; ++i) v.entities.intern(EntityKind::Country, "E" + std::to_string(i), std::nullopt);
  v.relations.intern("r0");
  v.relations.intern("r1");
  const auto n_entities = static_cast<std::uint32_t>(v.entities.size());
  Rng rng(2024);
  std::size_t accepted = 0, rejected = 0;
  for (int i = 0; i < 10000; ++i) {
    // Sides may repeat ids, and about one attempt in ten names an id
    // outside the vocabulary.
    auto draw_side = [&](std::size_t max_len) {
      std::vector<EntityId> side;
      const auto n = rng.below(max_len + 1);
      for (std::size_t k = 0; k < n; ++k) {
        const auto limit = rng.chance(0.02) ? n_entities + 3 : n_entities;
        side.push_back(EntityId{static_cast<std::uint32_t>(rng.below(limit))});
      }
      return side;
    };
    const auto actors = draw_side(5);
    const auto recipients = draw_side(5);
    const RelationId rel{static_cast<std::uint32_t>(rng.below(rng.chance(0.02) ? 4 : 2))};

    // Expected outcome from the definitions.
    const auto a_set = oracle::id_set(actors);
    const auto r_set = oracle::id_set(recipients);
    std::optional<Errc> expected;
    bool unknown = rel.value >= v.relations.size();
    for (const auto x : a_set) unknown |= x >= n_entities;
    for (const auto x : r_set) unknown |= x >= n_entities;
    if (a_set.empty()) {
      expected = Errc::EmptyActors;
    } else if (a_set.size() + r_set.size() <= 1) {
      expected = Errc::TooFewEntities;
    } else if (unknown) {
      expected = Errc::UnknownSymbol;
    }

    try {
      const Fact f = make_fact(actors, rel, recipients, Timestamp(i), {}, 0, &v);
      check(!expected, "attempt " + std::to_string(i) + " accepted but should fail with " +
                           std::string(to_string(*expected)));
      check(!f.actors.empty(), "accepted fact with empty actors");
      check(f.actors.size() + f.recipients.size() > 1, "accepted fact with a lone entity");
      check(oracle::id_set(f.actors) == a_set && f.actors.size() == a_set.size(), "actor set changed");
      check(oracle::id_set(f.recipients) == r_set && f.recipients.size() == r_set.size(), "recipient set changed");
      const auto t = classify_edge_type(f);
      const auto na = f.actors.size(), nr = f.recipients.size();
      const EdgeType want = nr == 0 ? (na == 2 ? EdgeType::BidirectionalPair : EdgeType::Group)
                                    : (na == 1 && nr == 1 ? EdgeType::Standard : EdgeType::Set2Set);
      check(t == want, "edge type of accepted fact");
      ++accepted;
    } catch (const Error& e) {
      check(expected.has_value(), "attempt " + std::to_string(i) + " rejected: " + e.what());
      check(e.code() == *expected, "attempt " + std::to_string(i) + " cites " + std::string(to_string(e.code())) +
                                       " instead of " + std::string(to_string(*expected)));
      ++rejected;
    }
  }
  check(accepted > 1000 && rejected > 1000, "random attempts did not exercise both outcomes");

  // Exactly one edge type per size combination.
  for (std::size_t na = 1; na <= 5; ++na) {
    for (std::size_t nr = 0; nr <= 5; ++nr) {
      if (na + nr <= 1) continue;
      const int hits = (na == 1 && nr == 1) + (na == 2 && nr == 0) + (na >= 3 && nr == 0) + (nr >= 1 && na + nr >= 3);
      check(hits == 1, "edge type predicates overlap or leave a gap");
      const auto t = classify_edge_type(na, nr);
      check((t == EdgeType::Standard) == (na == 1 && nr == 1) &&
                (t == EdgeType::BidirectionalPair) == (na == 2 && nr == 0) &&
                (t == EdgeType::Group) == (na >= 3 && nr == 0) &&
                (t == EdgeType::Set2Set) == (nr >= 1 && na + nr >= 3),
            "classify_edge_type(" + std::to_string(na) + ", " + std::to_string(nr) + ")");
    }
  }
}

// ---- backward compatibility ----------------------------------------------

struct Quad {
  std::uint32_t s, r, o;
  std::int32_t t;
};

// Quadruple-level heuristics: history is the h newest quadruples before the
// query that share an endpoint with it (entity filter) or all earlier ones.
struct QuadPrediction {
  std::optional<std::uint32_t> freq, rec, copy;
};

QuadPrediction quad_predict(const std::vector<Quad>& quads, const Quad& q, bool entity_filter, std::size_t h) {
  std::vector<std::size_t> hist;
  for (std::size_t i = quads.size(); i-- > 0;) {
    const auto& x = quads[i];
    if (x.t >= q.t) continue;
    if (entity_filter && x.s != q.s && x.s != q.o && x.o != q.s && x.o != q.o) continue;
    hist.push_back(i);  // quads are sorted by t, so this walks newest first
    if (hist.size() == h) break;
  }
  QuadPrediction p;
  if (hist.empty()) return p;
  p.rec = quads[hist.front()].r;
  std::map<std::uint32_t, std::size_t> counts;
  std::size_t best = 0;
  for (const auto i : hist) best = std::max(best, ++counts[quads[i].r]);
  for (const auto i : hist) {
    if (counts[quads[i].r] == best) {
      p.freq = quads[i].r;
      break;
    }
  }
  for (const auto i : hist) {
    if (quads[i].s == q.s && quads[i].o == q.o) {
      p.copy = quads[i].r;
      break;
    }
  }
  return p;
}

std::optional<std::uint32_t> raw(const HeuristicPrediction& p) {
  return p.relation ? std::optional<std::uint32_t>(p.relation->value) : std::nullopt;
}

void backward_compatibility() {
  Rng rng(77);
  constexpr std::uint32_t kEntities = 12, kRelations = 6;
  std::vector<Quad> quads;
  for (int i = 0; i < 1000; ++i) {
    const auto s = static_cast<std::uint32_t>(rng.below(kEntities));
    const auto o = static_cast<std::uint32_t>((s + 1 + rng.below(kEntities - 1)) % kEntities);
    quads.push_back({s, static_cast<std::uint32_t>(rng.below(kRelations)), o, static_cast<std::int32_t>(i / 4)});
  }
  Vocab v;
  for (std::uint32_t e = 0; e < kEntities; ++e) v.entities.intern(EntityKind::Country, "C" + std::to_string(e), std::nullopt);
  for (std::uint32_t r = 0; r < kRelations; ++r) v.relations.intern("rel" + std::to_string(r));
  std::vector<Fact> facts;
  for (std::size_t i = 0; i < quads.size(); ++i) {
    const auto& x = quads[i];
    facts.push_back(from_htkg_quadruple(EntityId{x.s}, RelationId{x.r}, EntityId{x.o}, Timestamp(x.t), {}, i, &v));
  }
  const Dataset d(std::move(facts), v);
  check(validate_dataset(d).ok(), "converted dataset fails validation");
  for (const auto& f : d.facts()) check(classify_edge_type(f) == EdgeType::Standard, "non-Standard converted fact");

  const HistoryIndex index(d);
  for (std::size_t i = 0; i < quads.size(); ++i) {
    const auto q = query_from_fact(d.facts()[i], i);
    for (const bool e : {false, true}) {
      for (const std::size_t h : {5, 100}) {
        const auto want = quad_predict(quads, quads[i], e, h);
        const auto hc = index.retrieve(q, FilterConfig{e, false, false}, h);
        const auto where = "quadruple " + std::to_string(i) + (e ? " entity filter" : " no filter") + " h=" + std::to_string(h);
        check(raw(frequency(hc)) == want.freq, "frequency differs on " + where);
        check(raw(recency(hc)) == want.rec, "recency differs on " + where);
        check(raw(copy(hc, q)) == want.copy, "copy differs on " + where);
      }
    }
  }
}

// ---- retrieval oracle ------------------------------------------------------

const Dataset& large_dataset() {
  static const Dataset d = [] {
    SyntheticConfig c;
    c.facts = 50000;
    c.entities = 120;
    c.days = 3000;
    c.seed = 11;
    return generate_synthetic(c).dataset;
  }();
  return d;
}

bool weaker_or_equal(const FilterConfig& a, const FilterConfig& b) {
  return (!a.entity || b.entity) && (!a.location || b.location) && (!a.context || b.context);
}

void retrieval_oracle() {
  const auto& d = large_dataset();
  const HistoryIndex index(d);
  const auto configs = FilterConfig::all();
  Rng rng(5150);
  for (int i = 0; i < 1000; ++i) {
    const auto q = support::random_query(d, rng, static_cast<std::uint64_t>(i));
    const auto& c = configs[rng.below(configs.size())];
    const std::size_t h = rng.below(4) == 0 ? rng.below(5) : rng.below(300);
    const auto got = retrieve_history(index, q, c, h);
    const auto want = oracle::retrieve(d.facts(), q, c, h);
    const auto where = "triple " + std::to_string(i) + " filters " + c.to_string() + " h=" + std::to_string(h);
    check(got.facts == want, "retrieval differs from scan on " + where);
    for (const auto& f : got.facts) check(f.t < q.t, "fact at or after the query day on " + where);

    // Turning on more filters only removes facts.
    std::vector<std::set<std::size_t>> passing(configs.size());
    std::vector<std::size_t> lengths(configs.size());
    for (std::size_t k = 0; k < configs.size(); ++k) {
      const auto pos = index.passing_positions(q, configs[k], std::numeric_limits<std::int32_t>::min(), d.size());
      passing[k] = {pos.begin(), pos.end()};
      lengths[k] = index.retrieve(q, configs[k], h).facts.size();
    }
    for (std::size_t a = 0; a < configs.size(); ++a) {
      for (std::size_t b = 0; b < configs.size(); ++b) {
        if (!weaker_or_equal(configs[a], configs[b])) continue;
        check(std::includes(passing[a].begin(), passing[a].end(), passing[b].begin(), passing[b].end()),
              "filters " + configs[b].to_string() + " admit a fact " + configs[a].to_string() + " rejects on " + where);
        check(lengths[b] <= lengths[a],
              "stronger filters returned a longer history on " + where);
      }
    }
  }
}

// ---- window partition ------------------------------------------------------

void window_partition() {
  const auto& d = large_dataset();
  const HistoryIndex index(d);
  const auto configs = FilterConfig::all();
  Rng rng(808);
  for (int i = 0; i < 1000; ++i) {
    const auto q = support::random_query(d, rng, static_cast<std::uint64_t>(i));
    const auto& c = configs[rng.below(configs.size())];
    const std::int32_t delta = std::array<std::int32_t, 3>{1, 2, 7}[rng.below(3)];
    const std::size_t H = std::array<std::size_t, 3>{1, 4, 7}[rng.below(3)];
    const auto ex = partition_windows(index, q, delta, H, c);
    const auto where = "query " + std::to_string(i) + " delta=" + std::to_string(delta) + " H=" + std::to_string(H);
    check(ex.windows == oracle::windows(d.facts(), q, delta, H, c), "windows differ from interval oracle on " + where);

    // Every in-range passing fact appears in exactly one window.
    std::map<std::uint64_t, int> seen;
    for (const auto& w : ex.windows) {
      for (const auto& f : w) ++seen[f.seq];
    }
    std::size_t in_range = 0;
    for (const auto& f : d.facts()) {
      const auto lo = q.t.day() - static_cast<std::int32_t>(H) * delta;
      if (f.t.day() < lo || f.t >= q.t || !oracle::passes(f, q, c)) continue;
      ++in_range;
      check(seen[f.seq] == 1, "fact " + std::to_string(f.seq) + " not in exactly one window on " + where);
    }
    check(seen.size() == in_range, "window holds an out-of-range fact on " + where);
  }
}

// ---- heuristic oracles -----------------------------------------------------

void heuristic_oracles() {
  Rng rng(31337);
  auto draw_set = [&](std::size_t lo, std::size_t hi) {
    std::vector<EntityId> ids{EntityId{0}, EntityId{1}, EntityId{2}, EntityId{3}, EntityId{4}};
    rng.shuffle(std::span<EntityId>(ids));
    ids.resize(lo + rng.below(hi - lo + 1));
    return ids;
  };
  auto draw_quals = [&] {
    std::vector<QualifierPair> qs;
    const auto n = rng.below(3);
    for (std::size_t k = 0; k < n; ++k) {
      qs.push_back({rng.chance(0.5) ? kLocation : kContext, EntityId{static_cast<std::uint32_t>(5 + rng.below(2))}});
    }
    return qs;
  };
  for (int i = 0; i < 10000; ++i) {
    HistoryContext hc;
    const auto n = rng.below(40);
    const auto n_rel = 1 + rng.below(7);
    std::int32_t day = 0;
    for (std::size_t k = 0; k < n; ++k) {
      day += static_cast<std::int32_t>(rng.below(2));
      auto actors = draw_set(1, 2);
      auto recipients = draw_set(actors.size() == 1 ? 1 : 0, 2);
      std::erase_if(recipients, [&](EntityId e) { return std::count(actors.begin(), actors.end(), e) > 0; });
      if (actors.size() + recipients.size() <= 1) recipients = {EntityId{actors[0].value == 0 ? 1u : 0u}};
      hc.facts.push_back(make_fact(std::move(actors), RelationId{static_cast<std::uint32_t>(rng.below(n_rel))},
                                   std::move(recipients), Timestamp(day), draw_quals(), k));
    }
    RelationQuery q;
    if (!hc.facts.empty() && rng.chance(0.6)) {
      // Reuse a historical pair with its members reordered.
      const auto& f = hc.facts[rng.below(hc.facts.size())];
      q = query_from_fact(f, 0);
      rng.shuffle(std::span<EntityId>(q.actors));
      rng.shuffle(std::span<EntityId>(q.recipients));
      if (rng.chance(0.5)) rng.shuffle(std::span<QualifierPair>(q.qualifiers));
      if (rng.chance(0.3)) q.qualifiers = draw_quals();
    } else {
      q.actors = draw_set(1, 2);
      q.recipients = {};
      q.qualifiers = draw_quals();
    }
    q.t = Timestamp(day + 1);
    hc.query = q;
    hc.h = n;
    const auto where = "history " + std::to_string(i);
    check(frequency(hc).relation == oracle::frequency(hc.facts), "frequency differs on " + where);
    check(recency(hc).relation == oracle::recency(hc.facts), "recency differs on " + where);
    check(copy(hc, q).relation == oracle::copy(hc.facts, q, false), "copy differs on " + where);
    check(copy(hc, q, CopyOptions{true}).relation == oracle::copy(hc.facts, q, true),
          "copy with qualifiers differs on " + where);
  }

  // Copy repeats every planted chain.
  SyntheticConfig c;
  c.regime = Regime::CopyChain;
  c.facts = 6000;
  c.seed = 3;
  const auto gen = generate_synthetic(c);
  const HistoryIndex index(gen.dataset);
  check(gen.truth.planted_copy_queries.size() > 100, "too few planted copy queries");
  std::size_t correct = 0;
  for (const auto seq : gen.truth.planted_copy_queries) {
    const auto q = query_from_fact(gen.dataset.facts()[seq], seq);
    correct += copy(index.retrieve(q, FilterConfig{true, true, true}, 100), q).relation == q.gold;
  }
  check(correct == gen.truth.planted_copy_queries.size(),
        "copy accuracy on planted chains " + std::to_string(correct) + "/" +
            std::to_string(gen.truth.planted_copy_queries.size()));
}

// ---- anonymization invariance ---------------------------------------------

// Accuracy computed on labels, so the comparison does not rely on ids
// surviving the relabeling.
double label_accuracy(const Dataset& d, const std::vector<RelationQuery>& qs, Heuristic h, const FilterConfig& c) {
  const HistoryIndex index(d);
  std::size_t correct = 0;
  for (const auto& q : qs) {
    const auto p = predict(h, index.retrieve(q, c, 100));
    correct += p.relation && d.vocab().relations.label(*p.relation) == d.vocab().relations.label(q.gold);
  }
  return static_cast<double>(correct) / static_cast<double>(qs.size());
}

void anonymization_invariance() {
  SyntheticConfig cfg;
  cfg.facts = 8000;
  cfg.seed = 21;
  const auto d = generate_synthetic(cfg).dataset;
  const auto qs = build_test_set(d, 0.1, 4, Timestamp::from_iso("2022-06-01"));
  check(qs.size() > 50, "test set too small");
  for (const auto mode : {AnonMode::Entities, AnonMode::All}) {
    const auto m = build_maps(d, 1234, mode);
    const auto relabeled = apply_anonymization(d, m);
    check(apply_anonymization(relabeled, m.inverse()) == d, "inverse map does not restore the dataset");

    // The anonymized pair goes through its files so every id is re-derived
    // from labels.
    const auto anon = support::from_text(support::canonical(relabeled));
    std::stringstream qfile;
    write_query_file(qfile, qs, relabeled.vocab());
    const auto anon_qs = read_query_file(qfile, anon.vocab());
    check(anon_qs.size() == qs.size(), "anonymized query file lost queries");

    for (const auto& c : FilterConfig::all()) {
      for (const auto h : {Heuristic::Frequency, Heuristic::Recency, Heuristic::Copy}) {
        const double before = label_accuracy(d, qs, h, c);
        const double after = label_accuracy(anon, anon_qs, h, c);
        check(before == after, std::string(to_string(mode)) + " " + c.to_string() + " " + std::string(to_string(h)) +
                                   ": " + std::to_string(before) + " vs " + std::to_string(after));
      }
    }
  }
}

// ---- parser conformance ----------------------------------------------------

void parser_conformance() {
  const auto cands = golden::parser_candidates();
  const auto cases = golden::parser_cases();
  check(cases.size() == 30, "golden suite must hold 30 cases");
  for (const auto& c : cases) {
    const auto got = parse_response(c.text, cands);
    check(got.matched_by == c.matched_by, c.name + ": matched by " + std::string(to_string(got.matched_by)));
    if (c.expected == 0) {
      check(!got.prediction, c.name + ": expected misformat");
    } else {
      check(got.prediction == cands[static_cast<std::size_t>(c.expected - 1)].id, c.name + ": wrong candidate");
    }
  }
}

// ---- end-to-end harness ----------------------------------------------------

void end_to_end() {
  SyntheticConfig cfg;
  cfg.facts = 10000;
  cfg.seed = 8;
  const auto d = generate_synthetic(cfg).dataset;
  const HistoryIndex index(d);
  const auto qs = build_test_set(d, 0.05, 2, Timestamp::from_iso("2021-01-01"));
  check(qs.size() > 100, "test set too small");
  for (const auto& filters : {FilterConfig{}, FilterConfig{true, true, true}}) {
    BenchmarkConfig bc;
    bc.filters = filters;
    bc.h = 100;
    bc.workers = 4;
    std::unordered_map<std::uint64_t, std::string> gold;
    for (const auto& q : qs) gold.emplace(q.qid, d.vocab().relations.label(q.gold));
    EchoGoldProvider echo(gold);
    const auto run = run_benchmark(index, qs, bc, echo);
    check(run.metrics.accuracy == 1.0, "echo-gold accuracy " + std::to_string(run.metrics.accuracy));
    check(run.metrics.misformat_rate == 0.0, "echo-gold misformat " + std::to_string(run.metrics.misformat_rate));

    FrequencyStubProvider stub;
    const auto stub_run = run_benchmark(index, qs, bc, stub);
    std::size_t correct = 0;
    for (const auto& q : qs) correct += frequency(retrieve_history(index, q, filters, bc.h)).relation == q.gold;
    const double want = static_cast<double>(correct) / static_cast<double>(qs.size());
    check(stub_run.metrics.accuracy == want, "frequency stub " + std::to_string(stub_run.metrics.accuracy) +
                                                 " vs baseline " + std::to_string(want) + " with filters " +
                                                 filters.to_string());
  }
}

// ---- split protocol --------------------------------------------------------

void split_protocol() {
  // Known bins: year y, relation r holds 37 + 53*y' + 101*r facts, which
  // covers remainders on both sides of the half-way point.
  Vocab v;
  const auto a = v.entities.intern(EntityKind::Country, "A", std::nullopt);
  const auto b = v.entities.intern(EntityKind::Country, "B", std::nullopt);
  std::map<std::pair<int, std::uint32_t>, std::size_t> bins;
  std::vector<Fact> facts;
  for (int y = 2015; y <= 2021; ++y) {
    for (std::uint32_t r = 0; r < 5; ++r) {
      const auto rel = v.relations.intern("rel" + std::to_string(r));
      const std::size_t n = 37 + 53 * static_cast<std::size_t>(y - 2015) + 101 * r + (r == 2 ? 13 : 0);
      bins[{y, rel.value}] = n;
      for (std::size_t k = 0; k < n; ++k) {
        facts.push_back(make_fact({a}, rel, {b}, Timestamp::from_ymd(y, 1 + static_cast<unsigned>(k % 12), 1 + static_cast<unsigned>(k % 28)), {}));
      }
    }
  }
  std::stable_sort(facts.begin(), facts.end(), [](const Fact& x, const Fact& y) { return x.t < y.t; });
  for (std::size_t i = 0; i < facts.size(); ++i) facts[i].seq = i;
  const Dataset d(std::move(facts), v);
  const auto cutoff = Timestamp::from_ymd(2017, 1, 1);
  const auto qs = build_test_set(d, 0.01, 99, cutoff);

  std::map<std::pair<int, std::uint32_t>, std::size_t> drawn;
  for (const auto& q : qs) {
    check(q.t >= cutoff, "query " + std::to_string(q.qid) + " precedes the cutoff");
    ++drawn[{q.t.year(), q.gold.value}];
  }
  for (const auto& [key, n] : bins) {
    // Integer round-half-up of n / 100.
    const std::size_t want = key.first < 2017 ? 0 : (n + 50) / 100;
    check(drawn[key] == want, "bin (" + std::to_string(key.first) + ", rel" + std::to_string(key.second) + ") of " +
                                  std::to_string(n) + " drew " + std::to_string(drawn[key]) + ", want " +
                                  std::to_string(want));
  }
  check(build_test_set(d, 0.01, 99, cutoff) == qs, "same seed gave a different test set");
  check(build_test_set(d, 0.01, 100, cutoff) != qs, "different seeds gave the same test set");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"structural gate", 5, structural_gate},
      {"backward compatibility", 5, backward_compatibility},
      {"retrieval oracle", 60, retrieval_oracle},
      {"window partition", 30, window_partition},
      {"heuristic oracles", 30, heuristic_oracles},
      {"anonymization invariance", 60, anonymization_invariance},
      {"parser conformance", 1, parser_conformance},
      {"end-to-end harness", 60, end_to_end},
      {"split protocol", 5, split_protocol},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      c.body();
    } catch (const Mismatch& m) {
      ok = false;
      detail = m.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && secs > c.budget_seconds) {
      ok = false;
      detail = "over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget";
    }
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3f s / %.0f s", secs, c.budget_seconds);
    std::cout << (ok ? "PASS  " : "FAIL  ") << c.name << "  (" << timing << ")";
    if (!ok) std::cout << "  " << detail;
    std::cout << std::endl;
    failures += !ok;
  }
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << criteria.size() - static_cast<std::size_t>(failures) << "/"
            << criteria.size() << std::endl;
  return failures ? 1 : 0;
}
