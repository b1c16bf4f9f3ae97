#include "htkgh/harness.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "htkgh/error.hpp"

namespace htkgh {

namespace {

double ratio(std::size_t a, std::size_t b) { return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b); }

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  return out;
}

}  // namespace

double BenchmarkMetrics::edge_type_accuracy(EdgeType t) const {
  const auto& s = per_edge_type[static_cast<std::size_t>(t)];
  return ratio(s.correct, s.total);
}

BenchmarkMetrics score_predictions(std::span<const ParsedAnswer> predictions, std::span<const RelationId> gold,
                                   std::span<const EdgeType> edge_types) {
  if (gold.empty()) throw Error(Errc::LengthMismatch, "no gold labels to score against");
  if (predictions.size() != gold.size()) {
    throw Error(Errc::LengthMismatch, std::to_string(predictions.size()) + " predictions for " +
                                          std::to_string(gold.size()) + " gold labels");
  }
  if (!edge_types.empty() && edge_types.size() != gold.size()) {
    throw Error(Errc::LengthMismatch, "edge types do not line up with gold labels");
  }
  BenchmarkMetrics m;
  m.total = m.scored = gold.size();
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool hit = predictions[i].prediction == gold[i];
    m.correct += hit;
    m.misformatted += predictions[i].misformatted();
    if (!edge_types.empty()) {
      auto& s = m.per_edge_type[static_cast<std::size_t>(edge_types[i])];
      ++s.total;
      s.correct += hit;
    }
  }
  m.accuracy = m.accuracy_all = ratio(m.correct, m.scored);
  m.misformat_rate = ratio(m.misformatted, m.scored);
  return m;
}

BenchmarkMetrics score_predictions(std::span<const ParsedAnswer> predictions, std::span<const RelationId> gold) {
  return score_predictions(predictions, gold, {});
}

std::string prompt_hash(std::string_view prompt) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const unsigned char c : prompt) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

BenchmarkRun run_benchmark(const HistoryIndex& index, std::span<const RelationQuery> queries,
                           const BenchmarkConfig& config, CompletionProvider& provider) {
  const Vocab& vocab = index.dataset().vocab();
  BenchmarkRun run;
  run.log.resize(queries.size());

  std::vector<PromptInstance> prompts;
  prompts.reserve(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const auto& q = queries[i];
    const auto hc = index.retrieve(q, config.filters, config.h);
    prompts.push_back(render_prompt(q, hc, vocab, config.mode, config.prompt));
    auto& entry = run.log[i];
    entry.qid = q.qid;
    entry.prompt_hash = prompt_hash(prompts.back().text);
    entry.gold = q.gold;
    entry.gold_label = vocab.relations.label(q.gold);
    entry.edge_type = classify_edge_type(q);
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < queries.size(); i = next++) {
      auto& entry = run.log[i];
      const CompletionRequest request{prompts[i].qid, prompts[i].text, prompts[i].max_tokens};
      for (std::size_t attempt = 0; attempt <= config.max_retries; ++attempt) {
        ++entry.attempts;
        try {
          entry.response = provider.complete(request);
          entry.errored = false;
          entry.error.clear();
          break;
        } catch (const std::exception& e) {
          entry.errored = true;
          entry.error = e.what();
        }
      }
    }
  };
  const std::size_t n_threads = std::max<std::size_t>(1, std::min(config.workers, queries.size()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }

  std::vector<ParsedAnswer> parsed;
  std::vector<RelationId> gold;
  std::vector<EdgeType> types;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    auto& entry = run.log[i];
    if (entry.errored) {
      run.warnings.push_back(std::string(to_string(Errc::ProviderUnavailable)) + ": qid " +
                             std::to_string(entry.qid) + " excluded after " + std::to_string(entry.attempts) +
                             " attempts: " + entry.error);
      continue;
    }
    entry.parsed = parse_response(entry.response, prompts[i].candidates);
    if (entry.parsed.prediction) entry.parsed_label = vocab.relations.label(*entry.parsed.prediction);
    entry.correct = entry.parsed.prediction == entry.gold;
    parsed.push_back(entry.parsed);
    gold.push_back(entry.gold);
    types.push_back(entry.edge_type);
  }

  if (!gold.empty()) run.metrics = score_predictions(parsed, gold, types);
  run.metrics.total = queries.size();
  run.metrics.errored = queries.size() - gold.size();
  run.metrics.accuracy_all = ratio(run.metrics.correct, run.metrics.total);
  return run;
}

void write_metrics_json(const std::filesystem::path& path, const BenchmarkMetrics& m, const BenchmarkConfig& config) {
  nlohmann::ordered_json j;
  j["total"] = m.total;
  j["scored"] = m.scored;
  j["errored"] = m.errored;
  j["correct"] = m.correct;
  j["misformatted"] = m.misformatted;
  j["accuracy"] = m.accuracy;
  j["accuracy_all"] = m.accuracy_all;
  j["misformat_rate"] = m.misformat_rate;
  nlohmann::ordered_json per = nlohmann::ordered_json::object();
  for (const auto t : kAllEdgeTypes) {
    const auto& s = m.per_edge_type[static_cast<std::size_t>(t)];
    per[std::string(to_string(t))] = {{"total", s.total}, {"correct", s.correct}, {"accuracy", m.edge_type_accuracy(t)}};
  }
  j["per_edge_type"] = per;
  j["config"] = {{"filters", config.filters.to_string()},
                 {"h", config.h},
                 {"mode", std::string(to_string(config.mode))},
                 {"workers", config.workers},
                 {"max_retries", config.max_retries}};
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

void write_responses_jsonl(const std::filesystem::path& path, std::span<const QueryLog> log) {
  auto out = open_out(path);
  for (const auto& e : log) {
    nlohmann::ordered_json j;
    j["qid"] = e.qid;
    j["prompt_hash"] = e.prompt_hash;
    j["response"] = e.response;
    j["parsed"] = e.parsed_label.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(e.parsed_label);
    j["matched_by"] = std::string(to_string(e.parsed.matched_by));
    j["gold"] = e.gold_label;
    j["correct"] = e.correct;
    j["errored"] = e.errored;
    if (e.errored) j["error"] = e.error;
    j["attempts"] = e.attempts;
    out << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  }
}

}  // namespace htkgh
