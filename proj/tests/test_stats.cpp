#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "htkgh/fact_io.hpp"
#include "htkgh/stats.hpp"
#include "htkgh/synthetic.hpp"

using namespace htkgh;
namespace fs = std::filesystem;

namespace {

Dataset from_text(const std::string& text) {
  std::istringstream in(text);
  return read_fact_file(in);
}

std::string line(const std::string& a, const std::string& rc, const std::string& t, const std::string& q = "") {
  return "{\"a\":[" + a + "],\"r\":\"x\",\"rc\":[" + rc + "],\"t\":\"" + t + "\",\"q\":[" + q + "]}\n";
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("htkgh_stats_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(ComputeStats, FourStandardOneGroup) {
  const auto d = from_text(line("\"A\"", "\"B\"", "2020-01-01") + line("\"A\"", "\"C\"", "2020-01-02") +
                           line("\"B\"", "\"C\"", "2020-01-03") + line("\"C\"", "\"A\"", "2020-01-04") +
                           line("\"A\",\"B\",\"C\"", "", "2020-01-05"));
  const auto r = compute_stats(d, 10);
  EXPECT_EQ(r.count(EdgeType::Standard), 4u);
  EXPECT_EQ(r.count(EdgeType::Group), 1u);
  EXPECT_EQ(r.count(EdgeType::Set2Set), 0u);
  EXPECT_DOUBLE_EQ(r.non_standard_share(), 0.2);
  EXPECT_EQ(r.qualifier_mean, 0.0);
  EXPECT_EQ(r.per_year.size(), 1u);
  EXPECT_EQ(r.entity_count_histogram, (std::map<std::size_t, std::size_t>{{2, 4}, {3, 1}}));
  // A appears in 4 facts, C in 4, B in 3; ties break by label.
  ASSERT_EQ(r.top_entities.size(), 3u);
  EXPECT_EQ(r.top_entities[0], (std::pair<std::string, std::size_t>{"A", 4}));
  EXPECT_EQ(r.top_entities[1], (std::pair<std::string, std::size_t>{"C", 4}));
  EXPECT_EQ(r.top_relations[0], (std::pair<std::string, std::size_t>{"x", 5}));
}

TEST(ComputeStats, MergedGroupViewAndQualifierMean) {
  const auto d = from_text(line("\"A\",\"B\"", "", "2020-01-01", "[\"location\",\"A\"]") +
                           line("\"A\",\"B\",\"C\"", "", "2021-01-01", "[\"context\",\"t\"],[\"context\",\"u\"]") +
                           line("\"A\"", "\"B\",\"C\"", "2022-01-01"));
  const auto r = compute_stats(d, 2);
  EXPECT_EQ(r.merged_group(), 2u);
  EXPECT_EQ(r.count(EdgeType::Set2Set), 1u);
  EXPECT_EQ(r.qualifier_total, 3u);
  EXPECT_DOUBLE_EQ(r.qualifier_mean, 1.0);
  EXPECT_EQ(r.per_year.size(), 3u);
  EXPECT_EQ(r.top_entities.size(), 2u);
}

TEST(ComputeStats, PartitionsSumToFactCount) {
  SyntheticConfig c;
  c.facts = 3000;
  const auto gen = generate_synthetic(c);
  const auto r = compute_stats(gen.dataset, 10);
  std::size_t edges = 0, years = 0, hist = 0;
  for (const auto n : r.edge_type_counts) edges += n;
  for (const auto& [y, n] : r.per_year) years += n;
  for (const auto& [k, n] : r.entity_count_histogram) hist += n;
  EXPECT_EQ(edges, r.facts);
  EXPECT_EQ(years, r.facts);
  EXPECT_EQ(hist, r.facts);
  EXPECT_EQ(r.edge_type_counts, gen.truth.edge_type_counts);
  EXPECT_EQ(r.qualifier_total, gen.truth.qualifier_total);
  EXPECT_LE(r.top_entities.size(), 10u);
}

TEST(StatsCsv, RoundTripsExactly) {
  SyntheticConfig c;
  c.facts = 2000;
  const auto r = compute_stats(generate_synthetic(c).dataset, 7);
  std::stringstream s;
  write_stats_csv(s, r);
  EXPECT_EQ(read_stats_csv(s), r);
  for (const char* section : {"#EDGE_TYPES", "#TOP_ENTITIES", "#TOP_RELATIONS", "#PER_YEAR", "#QUALIFIERS",
                              "#ENTITY_COUNT_HIST"}) {
    EXPECT_NE(s.str().find(section), std::string::npos) << section;
  }
}

TEST(StatsCsv, QuotesAwkwardLabels) {
  const auto d = from_text(
      "{\"a\":[\"Korea, Republic of\"],\"r\":\"say \\\"no\\\"\",\"rc\":[\"B\"],\"t\":\"2020-01-01\",\"q\":[]}\n");
  const auto r = compute_stats(d, 5);
  std::stringstream s;
  write_stats_csv(s, r);
  EXPECT_EQ(read_stats_csv(s), r);
}

TEST(EmitStats, WritesCsvAndBoundedPlots) {
  SyntheticConfig c;
  c.facts = 2000;
  const auto r = compute_stats(generate_synthetic(c).dataset, 10);
  const auto dir = scratch("plots");
  fs::create_directories(dir);
  const auto files = emit_stats(r, dir);
  EXPECT_GE(files.size(), 6u);
  std::ifstream csv(dir / "stats.csv");
  EXPECT_EQ(read_stats_csv(csv), r);
  const auto svg = slurp(dir / "top_entities.svg");
  const std::regex bar("class=\"bar\"");
  const auto bars = std::distance(std::sregex_iterator(svg.begin(), svg.end(), bar), std::sregex_iterator());
  EXPECT_GT(bars, 0);
  EXPECT_LE(bars, 10);
  fs::remove_all(dir);
}

TEST(EmitStats, EmptyDatasetStillWritesFiles) {
  const auto r = compute_stats(Dataset{}, 10);
  EXPECT_EQ(r.facts, 0u);
  EXPECT_EQ(r.qualifier_mean, 0.0);
  const auto dir = scratch("empty");
  fs::create_directories(dir);
  EXPECT_NO_THROW(emit_stats(r, dir));
  std::ifstream csv(dir / "stats.csv");
  EXPECT_EQ(read_stats_csv(csv), r);
  EXPECT_TRUE(fs::exists(dir / "edge_types.svg"));
  const auto only_csv = scratch("empty_noplots");
  fs::create_directories(only_csv);
  EXPECT_EQ(emit_stats(r, only_csv, false).size(), 1u);
  fs::remove_all(dir);
  fs::remove_all(only_csv);
}
