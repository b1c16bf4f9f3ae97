#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "htkgh/dataset.hpp"

namespace htkgh {

// A fact with its relation hidden; `gold` holds the answer.
struct RelationQuery {
  std::vector<EntityId> actors;
  std::vector<EntityId> recipients;
  std::vector<QualifierPair> qualifiers;
  Timestamp t;
  RelationId gold;
  std::uint64_t qid = 0;

  bool operator==(const RelationQuery&) const = default;
};

RelationQuery query_from_fact(const Fact& f, std::uint64_t qid);

inline EdgeType classify_edge_type(const RelationQuery& q) {
  return classify_edge_type(q.actors.size(), q.recipients.size());
}

std::vector<EntityId> primary_entities(const RelationQuery& q);

struct FilterConfig {
  bool entity = false;
  bool location = false;
  bool context = false;

  // "e,l,c" in any order and subset; "" or "none" means all off.
  static FilterConfig parse(std::string_view spec);
  std::string to_string() const;
  // All eight combinations, all-on first.
  static std::array<FilterConfig, 8> all();

  bool operator==(const FilterConfig&) const = default;
};

struct HistoryContext {
  std::vector<Fact> facts;  // oldest -> newest
  RelationQuery query;
  std::size_t h = 0;
};

// Location and context values attached to a fact or query.
std::vector<EntityId> locations_of(std::span<const QualifierPair> qualifiers);
std::vector<EntityId> contexts_of(std::span<const QualifierPair> qualifiers);

// Entity: shares a primary entity with the query. Location: if the query has
// a location, the fact has a matching one. Context: if the query has
// contexts, the fact shares at least one.
bool passes_filters(const Fact& f, const RelationQuery& q, const FilterConfig& c);

// Per-entity, per-location and per-context postings over a dataset. Holds a
// reference: the dataset must outlive the index.
class HistoryIndex {
 public:
  explicit HistoryIndex(const Dataset& d);

  const Dataset& dataset() const { return *d_; }

  // The h most recent passing facts strictly before q.t; within a day, larger
  // seq counts as more recent. Returned oldest -> newest.
  HistoryContext retrieve(const RelationQuery& q, const FilterConfig& c, std::size_t h) const;

  // Positions of every passing fact with lo_day <= t < q.t, newest first.
  std::vector<std::size_t> passing_positions(const RelationQuery& q, const FilterConfig& c,
                                             std::int32_t lo_day, std::size_t limit) const;

 private:
  using Postings = std::vector<std::uint32_t>;

  // Picks the most selective postings that every passing fact must appear
  // in. Returns false when no filter applies and a full scan is needed.
  bool driving_lists(const RelationQuery& q, const FilterConfig& c, std::vector<const Postings*>& out) const;

  const Dataset* d_;
  std::vector<Postings> by_entity_;
  std::vector<Postings> by_location_;
  std::vector<Postings> by_context_;
};

inline HistoryContext retrieve_history(const HistoryIndex& index, const RelationQuery& q,
                                       const FilterConfig& c, std::size_t h) {
  return index.retrieve(q, c, h);
}

// windows[j-1] holds the passing facts with t_q - j*delta <= t < t_q - (j-1)*delta,
// oldest -> newest. The query window W_0 is left to the consumer.
struct WindowedExample {
  RelationQuery query;
  RelationId label;
  std::vector<std::vector<Fact>> windows;
};

// Throws Error(ConfigInvalid) unless delta >= 1 and num_windows >= 1.
WindowedExample partition_windows(const HistoryIndex& index, const RelationQuery& q, std::int32_t delta,
                                  std::size_t num_windows, const FilterConfig& c);

struct ForecastViolation {
  std::uint64_t qid;   // offending query (or the earliest test query for train facts)
  std::uint64_t seq;   // offending fact
  std::string detail;
};

struct ForecastReport {
  std::vector<ForecastViolation> violations;
  bool clean() const { return violations.empty(); }
};

// Every training fact must precede the earliest test query.
ForecastReport validate_forecasting(const Dataset& train, std::span<const RelationQuery> tests);
// Every context/window fact must precede its query.
ForecastReport validate_forecasting(const HistoryContext& hc);
ForecastReport validate_forecasting(const WindowedExample& ex);

// Query files are JSON Lines keyed by labels, resolved against a dataset vocab:
//   {"qid":int,"a":[labels],"r":gold label,"rc":[labels],"t":"YYYY-MM-DD","q":[[qrel,label],...]}
void write_query_file(std::ostream& out, std::span<const RelationQuery> queries, const Vocab& vocab);
void write_query_file(const std::filesystem::path& path, std::span<const RelationQuery> queries,
                      const Vocab& vocab);
// Throws Error(UnknownSymbol) for labels the vocab lacks.
std::vector<RelationQuery> read_query_file(std::istream& in, const Vocab& vocab);
std::vector<RelationQuery> read_query_file(const std::filesystem::path& path, const Vocab& vocab);

// Wire format for the GNN consumer: one line per query, qid order,
//   {"qid":int,"query":{"a":[int],"rc":[int],"q":[[int,int]],"t":int},"label":int,
//    "windows":[[{"a":[int],"r":int,"rc":[int],"q":[[int,int]],"t":int},...],...]}
// with windows[0] = W_1. Times are day indices.
std::string windowed_example_to_json_line(const WindowedExample& ex);

// Writes examples.jsonl plus entities.tsv, relations.tsv and qualrels.tsv
// ("id<TAB>label") into out_dir. Returns the paths written.
std::vector<std::filesystem::path> export_windowed_examples(const HistoryIndex& index,
                                                            std::span<const RelationQuery> queries,
                                                            std::int32_t delta, std::size_t num_windows,
                                                            const FilterConfig& c,
                                                            const std::filesystem::path& out_dir);

}  // namespace htkgh
