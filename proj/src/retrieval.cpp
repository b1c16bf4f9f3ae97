#include "htkgh/retrieval.hpp"

#include <algorithm>
#include <climits>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>

#include <json.hpp>

#include "htkgh/error.hpp"

namespace htkgh {

namespace {

bool intersects(const std::vector<EntityId>& a, const std::vector<EntityId>& b) {
  for (EntityId x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) return true;
  }
  return false;
}

std::vector<EntityId> values_for(std::span<const QualifierPair> qualifiers, QualRelId qrel) {
  std::vector<EntityId> out;
  for (const auto& q : qualifiers) {
    if (q.qrel == qrel && std::find(out.begin(), out.end(), q.value) == out.end()) out.push_back(q.value);
  }
  return out;
}

// First position whose day is >= `day`.
std::size_t first_on_or_after(const std::vector<Fact>& facts, std::int32_t day) {
  return static_cast<std::size_t>(
      std::lower_bound(facts.begin(), facts.end(), day,
                       [](const Fact& f, std::int32_t d) { return f.t.day() < d; }) -
      facts.begin());
}

}  // namespace

RelationQuery query_from_fact(const Fact& f, std::uint64_t qid) {
  return RelationQuery{f.actors, f.recipients, f.qualifiers, f.t, f.relation, qid};
}

std::vector<EntityId> primary_entities(const RelationQuery& q) {
  std::vector<EntityId> out(q.actors);
  out.insert(out.end(), q.recipients.begin(), q.recipients.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FilterConfig FilterConfig::parse(std::string_view spec) {
  FilterConfig c;
  if (spec.empty() || spec == "none") return c;
  std::size_t start = 0;
  while (start <= spec.size()) {
    auto end = spec.find(',', start);
    if (end == std::string_view::npos) end = spec.size();
    const auto token = spec.substr(start, end - start);
    if (token == "e" || token == "entity") c.entity = true;
    else if (token == "l" || token == "location") c.location = true;
    else if (token == "c" || token == "context") c.context = true;
    else throw Error(Errc::ConfigInvalid, "unknown filter '" + std::string(token) + "' (expected e, l or c)");
    start = end + 1;
  }
  return c;
}

std::string FilterConfig::to_string() const {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(entity, "e");
  add(location, "l");
  add(context, "c");
  return out.empty() ? "none" : out;
}

std::array<FilterConfig, 8> FilterConfig::all() {
  std::array<FilterConfig, 8> out;
  for (int i = 0; i < 8; ++i) out[i] = FilterConfig{!(i & 4), !(i & 2), !(i & 1)};
  return out;
}

std::vector<EntityId> locations_of(std::span<const QualifierPair> qualifiers) {
  return values_for(qualifiers, kLocation);
}

std::vector<EntityId> contexts_of(std::span<const QualifierPair> qualifiers) {
  return values_for(qualifiers, kContext);
}

bool passes_filters(const Fact& f, const RelationQuery& q, const FilterConfig& c) {
  if (c.entity) {
    if (!intersects(f.actors, q.actors) && !intersects(f.actors, q.recipients) &&
        !intersects(f.recipients, q.actors) && !intersects(f.recipients, q.recipients)) {
      return false;
    }
  }
  if (c.location) {
    const auto want = locations_of(q.qualifiers);
    if (!want.empty() && !intersects(locations_of(f.qualifiers), want)) return false;
  }
  if (c.context) {
    const auto want = contexts_of(q.qualifiers);
    if (!want.empty() && !intersects(contexts_of(f.qualifiers), want)) return false;
  }
  return true;
}

HistoryIndex::HistoryIndex(const Dataset& d) : d_(&d) {
  const auto n = d.vocab().entities.size();
  by_entity_.resize(n);
  by_location_.resize(n);
  by_context_.resize(n);
  const auto& facts = d.facts();
  for (std::size_t p = 0; p < facts.size(); ++p) {
    const auto pos = static_cast<std::uint32_t>(p);
    for (EntityId e : primary_entities(facts[p])) by_entity_.at(e.value).push_back(pos);
    for (EntityId e : locations_of(facts[p].qualifiers)) by_location_.at(e.value).push_back(pos);
    for (EntityId e : contexts_of(facts[p].qualifiers)) by_context_.at(e.value).push_back(pos);
  }
}

bool HistoryIndex::driving_lists(const RelationQuery& q, const FilterConfig& c,
                                 std::vector<const Postings*>& out) const {
  static const Postings kEmpty;
  auto lookup = [&](const std::vector<Postings>& table, EntityId id) {
    return id.value < table.size() ? &table[id.value] : &kEmpty;
  };
  out.clear();
  if (c.entity) {
    for (EntityId e : primary_entities(q)) out.push_back(lookup(by_entity_, e));
    return true;
  }
  if (c.location) {
    const auto locs = locations_of(q.qualifiers);
    if (!locs.empty()) {
      for (EntityId e : locs) out.push_back(lookup(by_location_, e));
      return true;
    }
  }
  if (c.context) {
    const auto ctxs = contexts_of(q.qualifiers);
    if (!ctxs.empty()) {
      for (EntityId e : ctxs) out.push_back(lookup(by_context_, e));
      return true;
    }
  }
  return false;
}

std::vector<std::size_t> HistoryIndex::passing_positions(const RelationQuery& q, const FilterConfig& c,
                                                         std::int32_t lo_day, std::size_t limit) const {
  std::vector<std::size_t> out;
  if (limit == 0) return out;
  const auto& facts = d_->facts();
  const std::size_t cut = first_on_or_after(facts, q.t.day());
  const std::size_t lo = lo_day == INT32_MIN ? 0 : first_on_or_after(facts, lo_day);
  if (lo >= cut) return out;

  std::vector<const Postings*> lists;
  if (!driving_lists(q, c, lists)) {
    for (std::size_t p = cut; p-- > lo && out.size() < limit;) {
      if (passes_filters(facts[p], q, c)) out.push_back(p);
    }
    return out;
  }

  // Newest-first k-way merge over the postings below `cut`.
  using Cursor = std::pair<std::uint32_t, std::size_t>;  // (position, list)
  std::priority_queue<Cursor> heap;
  std::vector<std::size_t> next(lists.size());
  for (std::size_t i = 0; i < lists.size(); ++i) {
    const auto& l = *lists[i];
    next[i] = static_cast<std::size_t>(std::lower_bound(l.begin(), l.end(), cut) - l.begin());
    if (next[i] > 0) heap.emplace(l[--next[i]], i);
  }
  std::size_t last = SIZE_MAX;
  while (!heap.empty() && out.size() < limit) {
    const auto [pos, i] = heap.top();
    heap.pop();
    if (next[i] > 0) heap.emplace((*lists[i])[--next[i]], i);
    if (pos < lo) break;
    if (pos == last) continue;
    last = pos;
    if (passes_filters(facts[pos], q, c)) out.push_back(pos);
  }
  return out;
}

HistoryContext HistoryIndex::retrieve(const RelationQuery& q, const FilterConfig& c, std::size_t h) const {
  HistoryContext hc;
  hc.query = q;
  hc.h = h;
  auto positions = passing_positions(q, c, INT32_MIN, h);
  hc.facts.reserve(positions.size());
  for (auto it = positions.rbegin(); it != positions.rend(); ++it) hc.facts.push_back(d_->facts()[*it]);
  return hc;
}

WindowedExample partition_windows(const HistoryIndex& index, const RelationQuery& q, std::int32_t delta,
                                  std::size_t num_windows, const FilterConfig& c) {
  if (delta < 1) throw Error(Errc::ConfigInvalid, "window length must be >= 1 day");
  if (num_windows < 1) throw Error(Errc::ConfigInvalid, "number of windows must be >= 1");
  WindowedExample ex;
  ex.query = q;
  ex.label = q.gold;
  ex.windows.resize(num_windows);
  const std::int64_t span = static_cast<std::int64_t>(delta) * static_cast<std::int64_t>(num_windows);
  const auto lo_day = static_cast<std::int32_t>(std::max<std::int64_t>(INT32_MIN + 1, q.t.day() - span));
  const auto positions = index.passing_positions(q, c, lo_day, SIZE_MAX);
  for (auto it = positions.rbegin(); it != positions.rend(); ++it) {
    const Fact& f = index.dataset().facts()[*it];
    const std::int32_t age = q.t.day() - f.t.day();  // >= 1
    const auto j = static_cast<std::size_t>((age + delta - 1) / delta);
    ex.windows[j - 1].push_back(f);
  }
  return ex;
}

ForecastReport validate_forecasting(const Dataset& train, std::span<const RelationQuery> tests) {
  ForecastReport report;
  if (tests.empty()) return report;
  const auto earliest = std::min_element(tests.begin(), tests.end(),
                                         [](const auto& a, const auto& b) { return a.t < b.t; });
  for (const Fact& f : train.facts()) {
    if (f.t >= earliest->t) {
      report.violations.push_back({earliest->qid, f.seq,
                                   "training fact at " + f.t.iso() + " is not before test query at " +
                                       earliest->t.iso()});
    }
  }
  return report;
}

ForecastReport validate_forecasting(const HistoryContext& hc) {
  ForecastReport report;
  for (const Fact& f : hc.facts) {
    if (f.t >= hc.query.t) {
      report.violations.push_back({hc.query.qid, f.seq,
                                   "context fact at " + f.t.iso() + " is not before query at " +
                                       hc.query.t.iso()});
    }
  }
  return report;
}

ForecastReport validate_forecasting(const WindowedExample& ex) {
  ForecastReport report;
  for (const auto& window : ex.windows) {
    for (const Fact& f : window) {
      if (f.t >= ex.query.t) {
        report.violations.push_back({ex.query.qid, f.seq,
                                     "window fact at " + f.t.iso() + " is not before query at " +
                                         ex.query.t.iso()});
      }
    }
  }
  return report;
}

void write_query_file(std::ostream& out, std::span<const RelationQuery> queries, const Vocab& vocab) {
  for (const auto& q : queries) {
    nlohmann::ordered_json j;
    j["qid"] = q.qid;
    auto labels = [&](const std::vector<EntityId>& ids) {
      auto arr = nlohmann::ordered_json::array();
      for (EntityId id : ids) arr.push_back(vocab.entities.label(id));
      return arr;
    };
    j["a"] = labels(q.actors);
    j["r"] = vocab.relations.label(q.gold);
    j["rc"] = labels(q.recipients);
    j["t"] = q.t.iso();
    auto quals = nlohmann::ordered_json::array();
    for (const auto& p : q.qualifiers) {
      quals.push_back({vocab.qualifier_relations.label(p.qrel), vocab.entities.label(p.value)});
    }
    j["q"] = std::move(quals);
    out << j.dump() << '\n';
  }
  if (!out) throw Error(Errc::Io, "failed writing query file");
}

void write_query_file(const std::filesystem::path& path, std::span<const RelationQuery> queries,
                      const Vocab& vocab) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  write_query_file(out, queries, vocab);
}

std::vector<RelationQuery> read_query_file(std::istream& in, const Vocab& vocab) {
  std::vector<RelationQuery> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty() || text == "\r") continue;
    auto where = [&] { return "query file line " + std::to_string(line) + ": "; };
    try {
      const auto j = nlohmann::json::parse(text);
      RelationQuery q;
      q.qid = j.at("qid").get<std::uint64_t>();
      auto entity = [&](EntityKind kind, const std::string& label) {
        auto id = vocab.entities.find(kind, label);
        if (!id) throw Error(Errc::UnknownSymbol, where() + "unknown entity '" + label + "'");
        return *id;
      };
      for (const auto& l : j.at("a")) q.actors.push_back(entity(EntityKind::Country, l.get<std::string>()));
      for (const auto& l : j.at("rc")) q.recipients.push_back(entity(EntityKind::Country, l.get<std::string>()));
      const auto rel = j.at("r").get<std::string>();
      auto gold = vocab.relations.find(rel);
      if (!gold) throw Error(Errc::UnknownSymbol, where() + "unknown relation '" + rel + "'");
      q.gold = *gold;
      q.t = Timestamp::from_iso(j.at("t").get<std::string>());
      for (const auto& pair : j.at("q")) {
        const auto qrel_label = pair.at(0).get<std::string>();
        auto qrel = vocab.qualifier_relations.find(qrel_label);
        if (!qrel) throw Error(Errc::UnknownSymbol, where() + "unknown qualifier relation '" + qrel_label + "'");
        q.qualifiers.push_back({*qrel, entity(vocab.kind_for_qualifier(*qrel), pair.at(1).get<std::string>())});
      }
      out.push_back(std::move(q));
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::Parse, where() + e.what());
    }
  }
  if (in.bad()) throw Error(Errc::Io, "read failure");
  return out;
}

std::vector<RelationQuery> read_query_file(const std::filesystem::path& path, const Vocab& vocab) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  return read_query_file(in, vocab);
}

namespace {

nlohmann::ordered_json ids_json(const std::vector<EntityId>& ids) {
  auto arr = nlohmann::ordered_json::array();
  for (EntityId id : ids) arr.push_back(id.value);
  return arr;
}

nlohmann::ordered_json quals_json(const std::vector<QualifierPair>& quals) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& q : quals) arr.push_back(nlohmann::ordered_json::array({q.qrel.value, q.value.value}));
  return arr;
}

}  // namespace

std::string windowed_example_to_json_line(const WindowedExample& ex) {
  nlohmann::ordered_json j;
  j["qid"] = ex.query.qid;
  nlohmann::ordered_json query;
  query["a"] = ids_json(ex.query.actors);
  query["rc"] = ids_json(ex.query.recipients);
  query["q"] = quals_json(ex.query.qualifiers);
  query["t"] = ex.query.t.day();
  j["query"] = std::move(query);
  j["label"] = ex.label.value;
  auto windows = nlohmann::ordered_json::array();
  for (const auto& window : ex.windows) {
    auto facts = nlohmann::ordered_json::array();
    for (const Fact& f : window) {
      nlohmann::ordered_json fj;
      fj["a"] = ids_json(f.actors);
      fj["r"] = f.relation.value;
      fj["rc"] = ids_json(f.recipients);
      fj["q"] = quals_json(f.qualifiers);
      fj["t"] = f.t.day();
      facts.push_back(std::move(fj));
    }
    windows.push_back(std::move(facts));
  }
  j["windows"] = std::move(windows);
  return j.dump();
}

std::vector<std::filesystem::path> export_windowed_examples(const HistoryIndex& index,
                                                            std::span<const RelationQuery> queries,
                                                            std::int32_t delta, std::size_t num_windows,
                                                            const FilterConfig& c,
                                                            const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(Errc::Io, "cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<const RelationQuery*> ordered;
  for (const auto& q : queries) ordered.push_back(&q);
  std::stable_sort(ordered.begin(), ordered.end(), [](auto* a, auto* b) { return a->qid < b->qid; });

  std::vector<std::filesystem::path> written;
  const auto examples = out_dir / "examples.jsonl";
  {
    std::ofstream out(examples, std::ios::binary);
    if (!out) throw Error(Errc::Io, "cannot write " + examples.string());
    for (const auto* q : ordered) {
      out << windowed_example_to_json_line(partition_windows(index, *q, delta, num_windows, c)) << '\n';
    }
    if (!out) throw Error(Errc::Io, "failed writing " + examples.string());
  }
  written.push_back(examples);

  auto write_tsv = [&](const std::string& name, const auto& labels) {
    const auto path = out_dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::Io, "cannot write " + path.string());
    for (std::size_t i = 0; i < labels.size(); ++i) out << i << '\t' << labels[i] << '\n';
    written.push_back(path);
  };
  const Vocab& v = index.dataset().vocab();
  std::vector<std::string> entity_labels;
  for (const auto& e : v.entities.entries()) entity_labels.push_back(e.label);
  write_tsv("entities.tsv", entity_labels);
  write_tsv("relations.tsv", v.relations.labels());
  write_tsv("qualrels.tsv", v.qualifier_relations.labels());
  return written;
}

}  // namespace htkgh
