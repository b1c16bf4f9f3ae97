#include "htkgh/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "htkgh/error.hpp"

namespace htkgh {

namespace {

std::vector<std::pair<std::string, std::size_t>> top_k(const std::vector<std::size_t>& counts,
                                                       const std::vector<std::string>& labels,
                                                       std::size_t k) {
  std::vector<std::pair<std::string, std::size_t>> rows;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) rows.emplace_back(labels[i], counts[i]);
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (rows.size() > k) rows.resize(k);
  return rows;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::pair<std::string, std::string> split_row(const std::string& line) {
  std::string name;
  std::size_t i = 0;
  if (!line.empty() && line[0] == '"') {
    for (i = 1; i < line.size(); ++i) {
      if (line[i] == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          name += '"';
          ++i;
        } else {
          ++i;
          break;
        }
      } else {
        name += line[i];
      }
    }
  } else {
    i = line.rfind(',');
    if (i == std::string::npos) throw Error(Errc::Parse, "stats row without value: " + line);
    name = line.substr(0, i);
  }
  if (i >= line.size() || line[i] != ',') throw Error(Errc::Parse, "malformed stats row: " + line);
  return {name, line.substr(i + 1)};
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void write_bar_chart(const std::filesystem::path& path, const std::string& title,
                     const std::vector<std::pair<std::string, std::size_t>>& bars) {
  const int bar_w = 48, gap = 12, chart_h = 240, top = 40, label_h = 120;
  const int width = std::max<int>(320, 60 + static_cast<int>(bars.size()) * (bar_w + gap));
  const int height = top + chart_h + label_h;
  std::size_t peak = 1;
  for (const auto& b : bars) peak = std::max(peak, b.second);

  std::ofstream out(path);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<text x=\"10\" y=\"20\" font-size=\"14\">" << xml_escape(title) << "</text>\n";
  int x = 40;
  for (const auto& [label, value] : bars) {
    const int h = static_cast<int>(static_cast<double>(value) / static_cast<double>(peak) * chart_h);
    const int y = top + chart_h - h;
    out << "<rect class=\"bar\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << bar_w << "\" height=\"" << h
        << "\" fill=\"#4e79a7\"/>\n";
    out << "<text x=\"" << x + bar_w / 2 << "\" y=\"" << y - 3 << "\" text-anchor=\"middle\">" << value
        << "</text>\n";
    out << "<text transform=\"translate(" << x + bar_w / 2 << "," << top + chart_h + 12
        << ") rotate(45)\">" << xml_escape(label) << "</text>\n";
    x += bar_w + gap;
  }
  out << "</svg>\n";
}

}  // namespace

double StatsReport::non_standard_share() const {
  if (facts == 0) return 0.0;
  return static_cast<double>(facts - count(EdgeType::Standard)) / static_cast<double>(facts);
}

StatsReport compute_stats(const Dataset& d, std::size_t k) {
  StatsReport r;
  const Vocab& v = d.vocab();
  std::vector<std::size_t> entity_counts(v.entities.size(), 0);
  std::vector<std::size_t> relation_counts(v.relations.size(), 0);
  for (const Fact& f : d.facts()) {
    ++r.facts;
    ++r.edge_type_counts[static_cast<std::size_t>(classify_edge_type(f))];
    for (EntityId e : primary_entities(f)) ++entity_counts[e.value];
    ++relation_counts[f.relation.value];
    ++r.per_year[f.t.year()];
    r.qualifier_total += f.qualifiers.size();
    ++r.entity_count_histogram[f.actors.size() + f.recipients.size()];
  }
  std::vector<std::string> entity_labels;
  entity_labels.reserve(v.entities.size());
  for (const auto& e : v.entities.entries()) entity_labels.push_back(e.label);
  r.top_entities = top_k(entity_counts, entity_labels, k);
  r.top_relations = top_k(relation_counts, v.relations.labels(), k);
  r.qualifier_mean = r.facts == 0 ? 0.0 : static_cast<double>(r.qualifier_total) / static_cast<double>(r.facts);
  return r;
}

void write_stats_csv(std::ostream& out, const StatsReport& r) {
  out << "#EDGE_TYPES\n";
  for (EdgeType t : kAllEdgeTypes) out << to_string(t) << ',' << r.count(t) << '\n';
  out << "GroupMerged," << r.merged_group() << '\n';
  out << "#TOP_ENTITIES\n";
  for (const auto& [label, n] : r.top_entities) out << csv_field(label) << ',' << n << '\n';
  out << "#TOP_RELATIONS\n";
  for (const auto& [label, n] : r.top_relations) out << csv_field(label) << ',' << n << '\n';
  out << "#PER_YEAR\n";
  for (const auto& [year, n] : r.per_year) out << year << ',' << n << '\n';
  out << "#QUALIFIERS\n";
  out << "facts," << r.facts << '\n';
  out << "total," << r.qualifier_total << '\n';
  out << "mean," << format_double(r.qualifier_mean) << '\n';
  out << "#ENTITY_COUNT_HIST\n";
  for (const auto& [n, count] : r.entity_count_histogram) out << n << ',' << count << '\n';
  if (!out) throw Error(Errc::Io, "failed writing stats.csv");
}

StatsReport read_stats_csv(std::istream& in) {
  StatsReport r;
  std::string section, line;
  auto to_size = [](const std::string& s) { return static_cast<std::size_t>(std::stoull(s)); };
  try {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (line[0] == '#') {
        section = line.substr(1);
        continue;
      }
      auto [name, value] = split_row(line);
      if (section == "EDGE_TYPES") {
        for (EdgeType t : kAllEdgeTypes) {
          if (name == to_string(t)) r.edge_type_counts[static_cast<std::size_t>(t)] = to_size(value);
        }
      } else if (section == "TOP_ENTITIES") {
        r.top_entities.emplace_back(name, to_size(value));
      } else if (section == "TOP_RELATIONS") {
        r.top_relations.emplace_back(name, to_size(value));
      } else if (section == "PER_YEAR") {
        r.per_year[std::stoi(name)] = to_size(value);
      } else if (section == "QUALIFIERS") {
        if (name == "facts") r.facts = to_size(value);
        else if (name == "total") r.qualifier_total = to_size(value);
        else if (name == "mean") r.qualifier_mean = std::stod(value);
      } else if (section == "ENTITY_COUNT_HIST") {
        r.entity_count_histogram[to_size(name)] = to_size(value);
      } else {
        throw Error(Errc::Parse, "row outside a known section: " + line);
      }
    }
  } catch (const std::logic_error& e) {
    throw Error(Errc::Parse, std::string("bad number in stats.csv: ") + e.what());
  }
  return r;
}

std::vector<std::filesystem::path> emit_stats(const StatsReport& r, const std::filesystem::path& out_dir,
                                              bool plots) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(Errc::Io, "cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  const auto csv = out_dir / "stats.csv";
  {
    std::ofstream out(csv);
    if (!out) throw Error(Errc::Io, "cannot write " + csv.string());
    write_stats_csv(out, r);
  }
  written.push_back(csv);
  if (!plots) return written;

  auto numbered = [](const auto& m) {
    std::vector<std::pair<std::string, std::size_t>> bars;
    for (const auto& [key, n] : m) bars.emplace_back(std::to_string(key), n);
    return bars;
  };
  std::vector<std::pair<std::string, std::size_t>> edge_bars;
  for (EdgeType t : kAllEdgeTypes) edge_bars.emplace_back(std::string(to_string(t)), r.count(t));

  const std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::size_t>>>> charts = {
      {"edge_types", edge_bars},
      {"top_entities", r.top_entities},
      {"top_relations", r.top_relations},
      {"per_year", numbered(r.per_year)},
      {"entity_count_hist", numbered(r.entity_count_histogram)},
  };
  for (const auto& [name, bars] : charts) {
    const auto path = out_dir / (name + ".svg");
    write_bar_chart(path, name, bars);
    written.push_back(path);
  }
  return written;
}

}  // namespace htkgh
