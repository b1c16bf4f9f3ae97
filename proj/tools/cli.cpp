#include "htkgh/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <unordered_map>

#include "htkgh/anonymize.hpp"
#include "htkgh/baselines.hpp"
#include "htkgh/error.hpp"
#include "htkgh/fact_io.hpp"
#include "htkgh/harness.hpp"
#include "htkgh/ingest.hpp"
#include "htkgh/stats.hpp"
#include "htkgh/synthetic.hpp"
#include "htkgh/test_set.hpp"

namespace htkgh {

namespace {

namespace fs = std::filesystem;

constexpr const char* kFactFormat =
    "Fact files are JSON Lines, one fact per line:\n"
    "  {\"a\":[actor labels],\"r\":relation,\"rc\":[recipient labels],\"t\":\"YYYY-MM-DD\","
    "\"q\":[[qualifier relation, value],...]}\n";
constexpr const char* kQueryFormat =
    "Query files are JSON Lines with the fact keys plus \"qid\"; \"r\" holds the gold relation.\n";
constexpr const char* kPredictionFormat =
    "Prediction files are CSV with header \"qid,label\"; label is a relation label or ABSTAIN.\n";

// Settings that fail validation after flag parsing are still usage errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct PredictionRow {
  std::uint64_t qid;
  std::optional<std::string> label;
};

std::vector<PredictionRow> read_predictions(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot read " + path.string());
  std::vector<PredictionRow> rows;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (n == 1 && line == "qid,label") continue;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(Errc::Parse, "line " + std::to_string(n) + ": expected qid,label");
    PredictionRow row{};
    try {
      std::size_t used = 0;
      row.qid = std::stoull(line.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("qid");
    } catch (const std::exception&) {
      throw Error(Errc::Parse, "line " + std::to_string(n) + ": bad qid");
    }
    std::string field = line.substr(comma + 1);
    if (!field.empty() && field.front() == '"') {
      std::string raw;
      for (std::size_t i = 1; i < field.size(); ++i) {
        if (field[i] == '"') {
          if (i + 1 < field.size() && field[i + 1] == '"') {
            raw += '"';
            ++i;
          } else {
            break;
          }
        } else {
          raw += field[i];
        }
      }
      field = raw;
    }
    if (field != "ABSTAIN") row.label = field;
    rows.push_back(std::move(row));
  }
  return rows;
}

FilterConfig parse_filters(const std::string& spec) {
  try {
    return FilterConfig::parse(spec);
  } catch (const Error& e) {
    throw UsageError(std::string("--filters: ") + e.what());
  }
}

Dataset load_dataset(const fs::path& path) { return read_fact_file(path); }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hyper-relational temporal knowledge hypergraph toolkit"};
  app.name(args.empty() ? "htkgh" : fs::path(args[0]).filename().string());
  // "--h" is the history length, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.footer(std::string(kFactFormat) + kQueryFormat + kPredictionFormat);

  std::function<int()> action;

  // ingest
  struct {
    fs::path input, out, report, known;
    std::string format = "csv";
    char delimiter = ',';
    bool strict = false;
  } ing;
  auto* ingest = app.add_subcommand("ingest", "Build a fact file from coded event records");
  ingest->add_option("--input", ing.input, "Event records (CSV with header or JSON Lines)")->required();
  ingest->add_option("--format", ing.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  ingest->add_option("--delimiter", ing.delimiter, "CSV field delimiter");
  ingest->add_option("--known-countries", ing.known, "File with one resolvable country per line");
  ingest->add_option("--out", ing.out, "Output fact file")->required();
  ingest->add_option("--report", ing.report, "Write a JSON build report here");
  ingest->add_flag("--strict", ing.strict, "Exit 1 when any record is malformed or unresolvable");
  ingest->footer(
      "CSV columns: date,event_type,event_mode,actors,recipients,location,contexts. Actor and recipient\n"
      "cells are ';'-separated \"Country\" or \"Country|SECTOR\" entries; contexts are ';'-separated.\n"
      "JSON Lines records use the same keys; actors may be strings, [country, sector] pairs or\n"
      "{\"country\",\"sector\"} objects.");
  ingest->callback([&] {
    action = [&] {
      CsvColumns cols;
      cols.delimiter = ing.delimiter;
      const auto parsed =
          parse_event_records(ing.input, ing.format == "csv" ? InputFormat::Csv : InputFormat::Jsonl, cols);
      BuildOptions opts;
      if (!ing.known.empty()) {
        std::ifstream in(ing.known);
        if (!in) throw Error(Errc::Io, "cannot read " + ing.known.string());
        for (std::string line; std::getline(in, line);) {
          if (!line.empty() && line.back() == '\r') line.pop_back();
          if (!line.empty()) opts.known_countries.insert(line);
        }
      }
      const auto built = build_dataset(parsed, opts);
      write_fact_file(ing.out, built.dataset);
      const auto& r = built.report;
      for (const auto& issue : r.parse_errors) err << "line " << issue.line << ": " << issue.message << '\n';
      for (const auto& issue : r.unresolvable) err << "line " << issue.line << ": " << issue.message << '\n';
      out << "kept " << r.kept << " facts; dropped " << r.dropped_no_actors << " without actors, "
          << r.dropped_lone_actor << " with a lone entity, " << r.unresolvable.size() << " unresolvable; "
          << r.parse_errors.size() << " malformed records\n";
      if (!ing.report.empty()) {
        nlohmann::ordered_json j;
        j["kept"] = r.kept;
        j["dropped_no_actors"] = r.dropped_no_actors;
        j["dropped_lone_actor"] = r.dropped_lone_actor;
        auto issues = [](const std::vector<ParseIssue>& v) {
          nlohmann::ordered_json a = nlohmann::ordered_json::array();
          for (const auto& i : v) a.push_back({{"line", i.line}, {"message", i.message}});
          return a;
        };
        j["unresolvable"] = issues(r.unresolvable);
        j["parse_errors"] = issues(r.parse_errors);
        open_out(ing.report) << j.dump(2) << '\n';
      }
      return (ing.strict && (!r.parse_errors.empty() || !r.unresolvable.empty())) ? kExitValidation : kExitOk;
    };
  });

  // synth
  SyntheticConfig syn;
  std::string syn_regime = "mixed";
  fs::path syn_out, syn_truth;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic fact file with planted structure");
  synth->add_option("--out", syn_out, "Output fact file")->required();
  synth->add_option("--truth", syn_truth, "Write the generator's ground truth as JSON");
  synth->add_option("--entities", syn.entities, "Number of countries")->capture_default_str();
  synth->add_option("--relations", syn.relations, "Number of relation labels")->capture_default_str();
  synth->add_option("--facts", syn.facts, "Number of facts")->capture_default_str();
  synth->add_option("--seed", syn.seed, "Random seed")->capture_default_str();
  synth->add_option("--regime", syn_regime, "uniform, copy-chain or mixed")
      ->check(CLI::IsMember({"uniform", "copy-chain", "mixed"}))
      ->capture_default_str();
  synth->add_option("--start", syn.start_date, "First day (YYYY-MM-DD)")->capture_default_str();
  synth->add_option("--days", syn.days, "Length of the time span in days")->capture_default_str();
  synth->add_option("--copy-period", syn.copy_period, "Days between copy-chain repeats")->capture_default_str();
  synth->add_option("--contexts", syn.contexts, "Number of context labels")->capture_default_str();
  synth->add_option("--chain-share", syn.chain_share, "Fraction of facts in copy chains")->capture_default_str();
  synth->add_option("--bias", syn.bias, "Preferred-relation probability for noise facts")->capture_default_str();
  synth->callback([&] {
    syn.regime = parse_regime(syn_regime);
    try {
      syn.validate();
      Timestamp::from_iso(syn.start_date);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    action = [&] {
      const auto gen = generate_synthetic(syn);
      write_fact_file(syn_out, gen.dataset);
      if (!syn_truth.empty()) open_out(syn_truth) << truth_to_json(gen.truth) << '\n';
      out << "wrote " << gen.dataset.size() << " facts to " << syn_out.string() << '\n';
      return kExitOk;
    };
  });

  // stats
  fs::path st_data, st_dir;
  std::size_t st_top = 10;
  bool st_no_plots = false;
  auto* stats = app.add_subcommand("stats", "Edge-type, entity, relation and year statistics");
  stats->add_option("--data", st_data, "Fact file")->required();
  stats->add_option("--out-dir", st_dir, "Directory for stats.csv and SVG charts")->required();
  stats->add_option("--top", st_top, "Entries in the top-entity and top-relation tables")->capture_default_str();
  stats->add_flag("--no-plots", st_no_plots, "Skip the SVG charts");
  stats->callback([&] {
    action = [&] {
      const auto d = load_dataset(st_data);
      const auto report = compute_stats(d, st_top);
      fs::create_directories(st_dir);
      for (const auto& p : emit_stats(report, st_dir, !st_no_plots)) out << p.string() << '\n';
      return kExitOk;
    };
  });

  // anonymize
  struct {
    fs::path data, out, map_out, map_in;
    std::uint64_t seed = 0;
    std::string mode = "entities";
    bool derangement = false, invert = false;
  } an;
  auto* anonymize = app.add_subcommand("anonymize", "Relabel countries (and optionally relations) by a seeded permutation");
  anonymize->add_option("--data", an.data, "Fact file")->required();
  anonymize->add_option("--out", an.out, "Anonymized fact file")->required();
  auto* an_seed = anonymize->add_option("--seed", an.seed, "Permutation seed");
  anonymize->add_option("--mode", an.mode, "entities or all")->check(CLI::IsMember({"entities", "all"}));
  anonymize->add_flag("--derangement", an.derangement, "Forbid labels mapping to themselves");
  anonymize->add_option("--map-out", an.map_out, "Write the permutation map as JSON");
  auto* an_map = anonymize->add_option("--map", an.map_in, "Apply an existing map instead of drawing one");
  anonymize->add_flag("--invert", an.invert, "Apply the inverse of --map")->needs(an_map);
  an_map->excludes(an_seed);
  anonymize->callback([&] {
    if (an.map_in.empty() && an_seed->count() == 0) throw UsageError("--seed: required unless --map is given");
    action = [&] {
      const auto d = load_dataset(an.data);
      AnonymizationMap m;
      if (!an.map_in.empty()) {
        m = read_map_file(an.map_in);
        if (an.invert) m = m.inverse();
      } else {
        m = build_maps(d, an.seed, parse_anon_mode(an.mode), AnonOptions{an.derangement});
      }
      write_fact_file(an.out, apply_anonymization(d, m));
      if (!an.map_out.empty()) write_map_file(an.map_out, m);
      out << "wrote " << d.size() << " facts to " << an.out.string() << '\n';
      return kExitOk;
    };
  });

  // split
  struct {
    fs::path data, out;
    double fraction = 0.01;
    std::uint64_t seed = 0;
    std::string drop_before = "0001-01-01";
  } sp;
  auto* split = app.add_subcommand("split", "Draw a test set stratified by year and relation");
  split->add_option("--data", sp.data, "Fact file")->required();
  split->add_option("--fraction", sp.fraction, "Share drawn from each (year, relation) bin")->capture_default_str();
  split->add_option("--seed", sp.seed, "Shuffle seed")->capture_default_str();
  split->add_option("--drop-before", sp.drop_before, "Exclude facts before this date (YYYY-MM-DD)");
  split->add_option("--out", sp.out, "Output query file")->required();
  split->callback([&] {
    if (!(sp.fraction > 0.0 && sp.fraction <= 1.0)) throw UsageError("--fraction: must lie in (0, 1]");
    if (!Timestamp::try_from_iso(sp.drop_before)) throw UsageError("--drop-before: expected YYYY-MM-DD");
    action = [&] {
      const auto d = load_dataset(sp.data);
      const auto qs = build_test_set(d, sp.fraction, sp.seed, Timestamp::from_iso(sp.drop_before));
      auto f = open_out(sp.out);
      write_query_file(f, qs, d.vocab());
      out << "wrote " << qs.size() << " queries to " << sp.out.string() << '\n';
      return kExitOk;
    };
  });

  // Options shared by the commands that retrieve histories.
  struct HistoryFlags {
    fs::path data, queries;
    std::string filters;
    std::size_t h = 100;
  };
  auto add_history_flags = [](CLI::App* cmd, HistoryFlags& f) {
    cmd->add_option("--data", f.data, "Fact file the histories come from")->required();
    cmd->add_option("--queries", f.queries, "Query file")->required();
    cmd->add_option("--filters", f.filters, "Comma-separated subset of e,l,c; omitted means no filters");
    cmd->add_option("--h", f.h, "History length")->capture_default_str();
  };

  // baseline
  HistoryFlags bl;
  std::string bl_heuristic;
  bool bl_quals = false;
  fs::path bl_out;
  auto* baseline = app.add_subcommand("baseline", "Predict relations with a history heuristic");
  add_history_flags(baseline, bl);
  baseline->add_option("--heuristic", bl_heuristic, "frequency, recency or copy")
      ->required()
      ->check(CLI::IsMember({"frequency", "recency", "copy"}));
  baseline->add_flag("--copy-include-qualifiers", bl_quals, "Copy also requires matching qualifiers");
  baseline->add_option("--out", bl_out, "Predictions CSV")->required();
  baseline->callback([&] {
    const auto filters = parse_filters(bl.filters);
    action = [&, filters] {
      const auto d = load_dataset(bl.data);
      const auto qs = read_query_file(bl.queries, d.vocab());
      const HistoryIndex index(d);
      const auto h = parse_heuristic(bl_heuristic);
      auto f = open_out(bl_out);
      f << "qid,label\n";
      std::size_t correct = 0;
      for (const auto& q : qs) {
        const auto p = predict(h, index.retrieve(q, filters, bl.h), CopyOptions{bl_quals});
        correct += p.relation == q.gold;
        f << q.qid << ',' << (p.relation ? csv_field(d.vocab().relations.label(*p.relation)) : "ABSTAIN") << '\n';
      }
      out << "accuracy " << (qs.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(qs.size()))
          << " over " << qs.size() << " queries\n";
      return kExitOk;
    };
  });

  // prompt
  HistoryFlags pr;
  std::string pr_mode = "nonthinking";
  std::optional<std::uint64_t> pr_qid, pr_shuffle;
  fs::path pr_out;
  auto* prompt = app.add_subcommand("prompt", "Render benchmark prompts");
  add_history_flags(prompt, pr);
  prompt->add_option("--mode", pr_mode, "nonthinking or thinking")->check(CLI::IsMember({"nonthinking", "thinking"}));
  prompt->add_option("--qid", pr_qid, "Render only this query");
  prompt->add_option("--shuffle-candidates", pr_shuffle, "Seed for a per-query candidate order");
  prompt->add_option("--out", pr_out, "Write prompts here instead of stdout");
  prompt->callback([&] {
    const auto filters = parse_filters(pr.filters);
    action = [&, filters] {
      const auto d = load_dataset(pr.data);
      const auto qs = read_query_file(pr.queries, d.vocab());
      const HistoryIndex index(d);
      std::ofstream file;
      if (!pr_out.empty()) file = open_out(pr_out);
      std::ostream& sink = pr_out.empty() ? out : file;
      bool found = false;
      for (const auto& q : qs) {
        if (pr_qid && q.qid != *pr_qid) continue;
        found = true;
        const auto p = render_prompt(q, index.retrieve(q, filters, pr.h), d.vocab(), parse_prompt_mode(pr_mode),
                                     PromptOptions{pr_shuffle, std::nullopt});
        sink << "### qid " << q.qid << '\n' << p.text << '\n';
      }
      if (pr_qid && !found) {
        err << "no query with qid " << *pr_qid << '\n';
        return kExitValidation;
      }
      return kExitOk;
    };
  });

  // bench
  HistoryFlags bn;
  struct {
    std::string mode = "nonthinking", provider = "http", text, url, token;
    std::optional<std::uint64_t> shuffle;
    std::optional<std::size_t> max_tokens;
    std::size_t workers = 4, retries = 2;
    double timeout = 120.0;
    fs::path out_dir;
  } bo;
  auto* bench = app.add_subcommand("bench", "Run the relation-prediction benchmark against a completion provider");
  add_history_flags(bench, bn);
  bench->add_option("--mode", bo.mode, "nonthinking or thinking")->check(CLI::IsMember({"nonthinking", "thinking"}));
  bench->add_option("--provider", bo.provider, "http, echo-gold, constant or frequency-stub")
      ->check(CLI::IsMember({"http", "echo-gold", "constant", "frequency-stub"}))
      ->capture_default_str();
  bench->add_option("--url", bo.url, "Completion endpoint for the http provider")->envname("HTKGH_PROVIDER_URL");
  bench->add_option("--token", bo.token, "Bearer token for the http provider")->envname("HTKGH_PROVIDER_TOKEN");
  bench->add_option("--text", bo.text, "Reply of the constant provider");
  bench->add_option("--workers", bo.workers, "Concurrent provider requests")->capture_default_str();
  bench->add_option("--retries", bo.retries, "Extra attempts per failed request")->capture_default_str();
  bench->add_option("--timeout", bo.timeout, "Per-request timeout in seconds")->capture_default_str();
  bench->add_option("--max-tokens", bo.max_tokens, "Override the mode's token limit");
  bench->add_option("--shuffle-candidates", bo.shuffle, "Seed for a per-query candidate order");
  bench->add_option("--out-dir", bo.out_dir, "Directory for metrics.json and responses.jsonl")->required();
  bench->footer(
      "The http provider POSTs {\"prompt\": str, \"max_tokens\": int} and expects {\"text\": str}.\n"
      "responses.jsonl holds one record per query: qid, prompt_hash, response, parsed, matched_by,\n"
      "gold, correct, errored, attempts.");
  bench->callback([&] {
    const auto filters = parse_filters(bn.filters);
    if (bo.provider == "http" && bo.url.empty()) throw UsageError("--url: required for the http provider");
    if (bo.workers == 0) throw UsageError("--workers: must be at least 1");
    action = [&, filters] {
      const auto d = load_dataset(bn.data);
      const auto qs = read_query_file(bn.queries, d.vocab());
      const HistoryIndex index(d);
      std::unique_ptr<CompletionProvider> provider;
      if (bo.provider == "echo-gold") {
        std::unordered_map<std::uint64_t, std::string> gold;
        for (const auto& q : qs) gold.emplace(q.qid, d.vocab().relations.label(q.gold));
        provider = std::make_unique<EchoGoldProvider>(std::move(gold));
      } else if (bo.provider == "constant") {
        provider = std::make_unique<ConstantProvider>(bo.text);
      } else if (bo.provider == "frequency-stub") {
        provider = std::make_unique<FrequencyStubProvider>();
      } else {
        provider = make_http_provider({bo.url, bo.token, bo.timeout});
      }
      BenchmarkConfig cfg;
      cfg.filters = filters;
      cfg.h = bn.h;
      cfg.mode = parse_prompt_mode(bo.mode);
      cfg.prompt = PromptOptions{bo.shuffle, bo.max_tokens};
      cfg.workers = bo.workers;
      cfg.max_retries = bo.retries;
      const auto run = run_benchmark(index, qs, cfg, *provider);
      for (const auto& w : run.warnings) err << "warning: " << w << '\n';
      fs::create_directories(bo.out_dir);
      write_metrics_json(bo.out_dir / "metrics.json", run.metrics, cfg);
      write_responses_jsonl(bo.out_dir / "responses.jsonl", run.log);
      out << "accuracy " << run.metrics.accuracy << " misformat " << run.metrics.misformat_rate << " over "
          << run.metrics.scored << " scored queries (" << run.metrics.errored << " errored)\n";
      return kExitOk;
    };
  });

  // eval
  fs::path ev_data, ev_queries, ev_preds, ev_out;
  auto* eval = app.add_subcommand("eval", "Score a predictions CSV against a query file");
  eval->add_option("--data", ev_data, "Fact file whose vocabulary the labels belong to")->required();
  eval->add_option("--queries", ev_queries, "Query file with gold relations")->required();
  eval->add_option("--predictions", ev_preds, "Predictions CSV")->required();
  eval->add_option("--out", ev_out, "Write metrics JSON here");
  eval->callback([&] {
    action = [&] {
      const auto d = load_dataset(ev_data);
      const auto qs = read_query_file(ev_queries, d.vocab());
      const auto rows = read_predictions(ev_preds);
      std::unordered_map<std::uint64_t, std::optional<std::string>> by_qid;
      for (const auto& r : rows) by_qid[r.qid] = r.label;
      if (by_qid.size() != qs.size()) {
        throw Error(Errc::LengthMismatch, std::to_string(by_qid.size()) + " predictions for " +
                                              std::to_string(qs.size()) + " queries");
      }
      std::vector<ParsedAnswer> preds;
      std::vector<RelationId> gold;
      std::vector<EdgeType> types;
      for (const auto& q : qs) {
        const auto it = by_qid.find(q.qid);
        if (it == by_qid.end()) throw Error(Errc::LengthMismatch, "no prediction for qid " + std::to_string(q.qid));
        ParsedAnswer a;
        if (it->second) {
          const auto id = d.vocab().relations.find(*it->second);
          if (!id) throw Error(Errc::UnknownSymbol, "relation '" + *it->second + "'");
          a = {*id, MatchedBy::Raw};
        }
        preds.push_back(a);
        gold.push_back(q.gold);
        types.push_back(classify_edge_type(q));
      }
      const auto m = score_predictions(preds, gold, types);
      out << "accuracy " << m.accuracy << " abstained " << m.misformat_rate << " over " << m.total << " queries\n";
      for (const auto t : kAllEdgeTypes) {
        const auto& s = m.per_edge_type[static_cast<std::size_t>(t)];
        if (s.total) out << "  " << to_string(t) << ' ' << m.edge_type_accuracy(t) << " (" << s.total << ")\n";
      }
      if (!ev_out.empty()) write_metrics_json(ev_out, m, BenchmarkConfig{});
      return kExitOk;
    };
  });

  // export-gnn
  HistoryFlags ex;
  std::int32_t ex_delta = 1;
  std::size_t ex_windows = 7;
  fs::path ex_dir;
  auto* export_gnn = app.add_subcommand("export-gnn", "Write windowed examples for the GNN trainer");
  export_gnn->add_option("--data", ex.data, "Fact file the windows are drawn from")->required();
  export_gnn->add_option("--queries", ex.queries, "Query file")->required();
  export_gnn->add_option("--filters", ex.filters, "Comma-separated subset of e,l,c; omitted means no filters");
  export_gnn->add_option("--delta", ex_delta, "Window width in days")->capture_default_str();
  export_gnn->add_option("--windows", ex_windows, "Number of windows H")->capture_default_str();
  export_gnn->add_option("--out-dir", ex_dir, "Output directory")->required();
  export_gnn->footer(
      "examples.jsonl: {\"qid\",\"query\":{\"a\",\"rc\",\"q\",\"t\"},\"label\",\"windows\":[[fact,...],...]}\n"
      "with integer ids and day-index times; windows[0] is the most recent window. entities.tsv,\n"
      "relations.tsv and qualrels.tsv map ids to labels.");
  export_gnn->callback([&] {
    const auto filters = parse_filters(ex.filters);
    if (ex_delta < 1) throw UsageError("--delta: must be at least 1");
    if (ex_windows < 1) throw UsageError("--windows: must be at least 1");
    action = [&, filters] {
      const auto d = load_dataset(ex.data);
      const auto qs = read_query_file(ex.queries, d.vocab());
      const HistoryIndex index(d);
      for (const auto& p : export_windowed_examples(index, qs, ex_delta, ex_windows, filters, ex_dir)) {
        out << p.string() << '\n';
      }
      return kExitOk;
    };
  });

  // validate
  fs::path va_data, va_queries;
  auto* validate = app.add_subcommand("validate", "Check fact invariants, ordering and forecasting safety");
  validate->add_option("--data", va_data, "Fact file")->required();
  validate->add_option("--queries", va_queries,
                       "Test queries; every fact in --data (a training split) must precede all of them");
  validate->callback([&] {
    action = [&] {
      const auto d = read_fact_file(va_data, FactFileOptions{false, false});
      const auto report = validate_dataset(d);
      for (const auto& v : report.violations) {
        err << (v.severity == Severity::Error ? "error" : "warning") << ": fact " << v.seq << ": "
            << to_string(v.kind) << ": " << v.detail << '\n';
      }
      bool ok = report.ok();
      std::size_t leaks = 0;
      if (!va_queries.empty()) {
        const auto qs = read_query_file(va_queries, d.vocab());
        const auto fr = validate_forecasting(d, qs);
        leaks = fr.violations.size();
        constexpr std::size_t kShown = 20;
        for (std::size_t i = 0; i < std::min(leaks, kShown); ++i) {
          err << "error: query " << fr.violations[i].qid << ": fact " << fr.violations[i].seq << ": "
              << fr.violations[i].detail << '\n';
        }
        if (leaks > kShown) err << "... " << leaks - kShown << " more forecasting violations\n";
        ok = ok && fr.clean();
      }
      out << (ok ? "valid" : "invalid") << ": " << report.error_count() << " errors, " << report.warning_count()
          << " warnings, " << leaks << " forecasting violations\n";
      return ok ? kExitOk : kExitValidation;
    };
  });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    // Requirement checks run before unknown flags are reported, so name any
    // unrecognised argument first: it is usually the real mistake.
    std::vector<std::string> unknown = app.remaining();
    for (const auto* sub : app.get_subcommands()) {
      const auto rest = sub->remaining();
      unknown.insert(unknown.end(), rest.begin(), rest.end());
    }
    if (!unknown.empty()) {
      err << "error: unrecognised argument: " << unknown.front() << '\n';
    } else {
      err << "error: " << e.what() << '\n';
    }
    err << '\n';
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n\n";
    return kExitUsage;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace htkgh
