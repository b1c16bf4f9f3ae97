#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "htkgh/prompt.hpp"
#include "htkgh/provider.hpp"
#include "htkgh/response_parser.hpp"

namespace htkgh {

struct EdgeTypeScore {
  std::size_t total = 0;
  std::size_t correct = 0;

  bool operator==(const EdgeTypeScore&) const = default;
};

struct BenchmarkMetrics {
  std::size_t total = 0;         // queries submitted
  std::size_t scored = 0;        // queries with a provider answer
  std::size_t errored = 0;       // queries whose provider calls all failed
  std::size_t correct = 0;
  std::size_t misformatted = 0;
  double accuracy = 0.0;         // correct / scored
  double misformat_rate = 0.0;   // misformatted / scored
  double accuracy_all = 0.0;     // correct / total, errored counted wrong
  std::array<EdgeTypeScore, 4> per_edge_type{};  // indexed by EdgeType, scored queries only

  double edge_type_accuracy(EdgeType t) const;
  bool operator==(const BenchmarkMetrics&) const = default;
};

// Scores parsed answers against gold relations. Throws Error(LengthMismatch)
// when the spans differ in length or are empty.
BenchmarkMetrics score_predictions(std::span<const ParsedAnswer> predictions, std::span<const RelationId> gold,
                                   std::span<const EdgeType> edge_types);
BenchmarkMetrics score_predictions(std::span<const ParsedAnswer> predictions, std::span<const RelationId> gold);

struct QueryLog {
  std::uint64_t qid = 0;
  std::string prompt_hash;  // FNV-1a 64, hex
  std::string response;
  ParsedAnswer parsed;
  std::string parsed_label;  // empty on misformat
  std::string gold_label;
  RelationId gold{0};
  EdgeType edge_type = EdgeType::Standard;
  bool correct = false;
  bool errored = false;
  std::string error;
  std::size_t attempts = 0;
};

struct BenchmarkConfig {
  FilterConfig filters;
  std::size_t h = 100;
  PromptMode mode = PromptMode::NonThinking;
  PromptOptions prompt;
  std::size_t workers = 1;      // concurrent provider calls
  std::size_t max_retries = 2;  // extra attempts after the first failure
};

struct BenchmarkRun {
  BenchmarkMetrics metrics;
  std::vector<QueryLog> log;  // qid order
  std::vector<std::string> warnings;
};

std::string prompt_hash(std::string_view prompt);

// retrieve -> render -> complete -> parse -> compare, per query. Provider
// calls run on up to `workers` threads; results are assembled in query order.
BenchmarkRun run_benchmark(const HistoryIndex& index, std::span<const RelationQuery> queries,
                           const BenchmarkConfig& config, CompletionProvider& provider);

void write_metrics_json(const std::filesystem::path& path, const BenchmarkMetrics& m, const BenchmarkConfig& config);
void write_responses_jsonl(const std::filesystem::path& path, std::span<const QueryLog> log);

}  // namespace htkgh
