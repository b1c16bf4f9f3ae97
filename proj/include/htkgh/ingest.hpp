#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "htkgh/dataset.hpp"

namespace htkgh {

struct ActorPair {
  std::string country;
  std::optional<std::string> sector;

  bool operator==(const ActorPair&) const = default;
};

// One coded event record before symbol construction.
struct RawEvent {
  std::string date;
  std::string event_type;
  std::optional<std::string> event_mode;
  std::vector<ActorPair> actors;
  std::vector<ActorPair> recipients;
  std::optional<std::string> location;
  std::vector<std::string> contexts;
  std::size_t line = 0;  // 1-based source line

  bool operator==(const RawEvent&) const = default;
};

enum class InputFormat { Csv, Jsonl };

// Named-column mapping for CSV input. Actor and recipient cells hold
// list_sep-separated entries, each "country" or "country<sector_sep>SECTOR";
// the contexts cell is list_sep-separated. The first row is the header.
struct CsvColumns {
  std::string date = "date";
  std::string event_type = "event_type";
  std::string event_mode = "event_mode";
  std::string actors = "actors";
  std::string recipients = "recipients";
  std::string location = "location";
  std::string contexts = "contexts";
  char delimiter = ',';
  char list_sep = ';';
  char sector_sep = '|';
};

struct ParseIssue {
  std::size_t line;
  std::string message;
};

struct ParseResult {
  std::vector<RawEvent> events;
  std::vector<ParseIssue> errors;
};

// Malformed records are reported with their line number and never dropped
// silently. Throws Error(Io) when the stream fails.
ParseResult parse_event_records(std::istream& in, InputFormat format, const CsvColumns& columns = {});
ParseResult parse_event_records(const std::filesystem::path& path, InputFormat format,
                                const CsvColumns& columns = {});

struct ConstructedSymbols {
  std::vector<EntityId> actors;
  std::vector<EntityId> recipients;
  RelationId relation;
  std::vector<QualifierPair> qualifiers;
};

// "Canada"+"GOV" -> "Canada (GOV)", "retreat"+"ceasefire" -> "retreat (ceasefire)",
// one location qualifier when present, one context qualifier per context.
ConstructedSymbols construct_symbols(const RawEvent& e, Vocab& vocab);

// A fact that may still violate the fact invariants.
struct FactCandidate {
  std::vector<EntityId> actors;
  RelationId relation;
  std::vector<EntityId> recipients;
  Timestamp t;
  std::vector<QualifierPair> qualifiers;
  std::uint64_t seq = 0;
};

enum class DropReason { NoActors, LoneActor };

struct FilterOutcome {
  std::vector<FactCandidate> kept;
  std::size_t dropped = 0;
  std::size_t dropped_no_actors = 0;
  std::size_t dropped_lone_actor = 0;
};

// Keeps candidates with at least one actor and more than one primary entity
// (after removing repeats), preserving order.
std::optional<DropReason> integrity_violation(const FactCandidate& c);
FilterOutcome apply_integrity_filter(std::vector<FactCandidate> candidates);

struct BuildOptions {
  // When non-empty, countries outside this set are unresolvable.
  std::set<std::string> known_countries;
};

struct BuildReport {
  std::vector<ParseIssue> parse_errors;
  std::vector<ParseIssue> unresolvable;  // dropped: empty or unknown country
  std::size_t dropped_no_actors = 0;
  std::size_t dropped_lone_actor = 0;
  std::size_t kept = 0;
};

struct BuildResult {
  Dataset dataset;
  BuildReport report;
};

// seq of each fact is the index of its event in `raw`.
BuildResult build_dataset(const std::vector<RawEvent>& raw, const BuildOptions& options = {});
BuildResult build_dataset(const ParseResult& parsed, const BuildOptions& options = {});

}  // namespace htkgh
