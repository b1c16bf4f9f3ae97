#include "htkgh/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>

#include <json.hpp>

#include "htkgh/error.hpp"

namespace htkgh {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += len;
  }
  return true;
}

std::vector<std::string> split_list(std::string_view cell, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= cell.size()) {
    auto end = cell.find(sep, start);
    if (end == std::string_view::npos) end = cell.size();
    auto item = trim(cell.substr(start, end - start));
    if (!item.empty()) out.push_back(std::move(item));
    start = end + 1;
  }
  return out;
}

ActorPair parse_actor(std::string_view entry, char sector_sep) {
  ActorPair p;
  const auto pos = entry.find(sector_sep);
  if (pos == std::string_view::npos) {
    p.country = trim(entry);
  } else {
    p.country = trim(entry.substr(0, pos));
    auto sector = trim(entry.substr(pos + 1));
    if (!sector.empty()) p.sector = std::move(sector);
  }
  return p;
}

std::optional<std::string> non_empty(std::string s) {
  if (s.empty()) return std::nullopt;
  return s;
}

// Reads one RFC 4180 record, which may span lines inside quotes. Returns
// false at end of input. `line` is advanced by the physical lines consumed.
bool read_csv_record(std::istream& in, char delim, std::vector<std::string>& fields,
                     std::string& raw, std::size_t& line, bool& unterminated) {
  fields.clear();
  raw.clear();
  unterminated = false;
  std::string text;
  if (!std::getline(in, text)) return false;
  ++line;
  std::string field;
  bool quoted = false;
  for (;;) {
    if (!text.empty() && text.back() == '\r') text.pop_back();
    raw += text;
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[i];
      if (quoted) {
        if (c == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            field += '"';
            ++i;
          } else {
            quoted = false;
          }
        } else {
          field += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == delim) {
        fields.push_back(std::move(field));
        field.clear();
      } else {
        field += c;
      }
    }
    if (!quoted) break;
    if (!std::getline(in, text)) {
      unterminated = true;
      break;
    }
    ++line;
    field += '\n';
    raw += '\n';
  }
  fields.push_back(std::move(field));
  return true;
}

void finish_event(RawEvent& e, std::size_t line, ParseResult& result) {
  e.line = line;
  if (!Timestamp::try_from_iso(e.date)) {
    result.errors.push_back({line, "unparseable date '" + e.date + "'"});
    return;
  }
  if (e.event_type.empty()) {
    result.errors.push_back({line, "missing event type"});
    return;
  }
  result.events.push_back(std::move(e));
}

ParseResult parse_csv(std::istream& in, const CsvColumns& cols) {
  ParseResult result;
  std::vector<std::string> fields;
  std::string raw;
  std::size_t line = 0;
  bool unterminated = false;

  if (!read_csv_record(in, cols.delimiter, fields, raw, line, unterminated)) return result;
  std::map<std::string, std::size_t> header;
  for (std::size_t i = 0; i < fields.size(); ++i) header[trim(fields[i])] = i;
  auto column = [&](const std::string& name, bool required) -> std::optional<std::size_t> {
    auto it = header.find(name);
    if (it != header.end()) return it->second;
    if (required) throw Error(Errc::Parse, "CSV header lacks required column '" + name + "'");
    return std::nullopt;
  };
  const auto c_date = column(cols.date, true);
  const auto c_type = column(cols.event_type, true);
  const auto c_mode = column(cols.event_mode, false);
  const auto c_actors = column(cols.actors, true);
  const auto c_recipients = column(cols.recipients, false);
  const auto c_location = column(cols.location, false);
  const auto c_contexts = column(cols.contexts, false);

  for (;;) {
    const std::size_t start = line + 1;
    if (!read_csv_record(in, cols.delimiter, fields, raw, line, unterminated)) break;
    if (trim(raw).empty()) continue;
    if (!valid_utf8(raw)) {
      result.errors.push_back({start, "invalid UTF-8"});
      continue;
    }
    if (unterminated) {
      result.errors.push_back({start, "unterminated quoted field"});
      continue;
    }
    if (fields.size() != header.size()) {
      result.errors.push_back({start, "expected " + std::to_string(header.size()) +
                                          " fields, found " + std::to_string(fields.size())});
      continue;
    }
    auto cell = [&](const std::optional<std::size_t>& c) -> std::string {
      return c ? trim(fields[*c]) : std::string();
    };
    RawEvent e;
    e.date = cell(c_date);
    e.event_type = cell(c_type);
    e.event_mode = non_empty(cell(c_mode));
    for (const auto& entry : split_list(cell(c_actors), cols.list_sep)) {
      e.actors.push_back(parse_actor(entry, cols.sector_sep));
    }
    for (const auto& entry : split_list(cell(c_recipients), cols.list_sep)) {
      e.recipients.push_back(parse_actor(entry, cols.sector_sep));
    }
    e.location = non_empty(cell(c_location));
    e.contexts = split_list(cell(c_contexts), cols.list_sep);
    finish_event(e, start, result);
  }
  if (in.bad()) throw Error(Errc::Io, "read failure");
  return result;
}

std::vector<ActorPair> json_actors(const nlohmann::json& j) {
  std::vector<ActorPair> out;
  if (j.is_null()) return out;
  for (const auto& item : j) {
    ActorPair p;
    if (item.is_string()) {
      p.country = trim(item.get<std::string>());
    } else if (item.is_array() && !item.empty() && item.size() <= 2) {
      p.country = trim(item[0].get<std::string>());
      if (item.size() == 2 && !item[1].is_null()) p.sector = non_empty(trim(item[1].get<std::string>()));
    } else if (item.is_object()) {
      p.country = trim(item.at("country").get<std::string>());
      if (item.contains("sector") && !item["sector"].is_null()) {
        p.sector = non_empty(trim(item["sector"].get<std::string>()));
      }
    } else {
      throw std::invalid_argument("actor entry must be a string, [country, sector] or object");
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::string opt_string(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return {};
  return trim(j[key].get<std::string>());
}

ParseResult parse_jsonl(std::istream& in) {
  ParseResult result;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (trim(text).empty()) continue;
    if (!valid_utf8(text)) {
      result.errors.push_back({line, "invalid UTF-8"});
      continue;
    }
    try {
      const auto j = nlohmann::json::parse(text);
      if (!j.is_object()) throw std::invalid_argument("expected a JSON object");
      RawEvent e;
      e.date = opt_string(j, "date");
      e.event_type = opt_string(j, "event_type");
      e.event_mode = non_empty(opt_string(j, "event_mode"));
      e.actors = json_actors(j.value("actors", nlohmann::json()));
      e.recipients = json_actors(j.value("recipients", nlohmann::json()));
      e.location = non_empty(opt_string(j, "location"));
      if (j.contains("contexts") && !j["contexts"].is_null()) {
        for (const auto& c : j["contexts"]) {
          auto s = trim(c.get<std::string>());
          if (!s.empty()) e.contexts.push_back(std::move(s));
        }
      }
      finish_event(e, line, result);
    } catch (const std::exception& ex) {
      result.errors.push_back({line, ex.what()});
    }
  }
  if (in.bad()) throw Error(Errc::Io, "read failure");
  return result;
}

}  // namespace

ParseResult parse_event_records(std::istream& in, InputFormat format, const CsvColumns& columns) {
  if (!in && !in.eof()) throw Error(Errc::Io, "input stream is not readable");
  // A UTF-16 byte order mark means the whole stream is in the wrong
  // encoding; a UTF-8 one is skipped.
  const int b0 = in.peek();
  if (b0 == 0xFF || b0 == 0xFE) {
    throw Error(Errc::Encoding, "input looks like UTF-16; convert it to UTF-8");
  }
  if (b0 == 0xEF) {
    char bom[3] = {};
    in.read(bom, 3);
    if (!(static_cast<unsigned char>(bom[1]) == 0xBB && static_cast<unsigned char>(bom[2]) == 0xBF)) {
      throw Error(Errc::Encoding, "input starts with an invalid UTF-8 sequence");
    }
  }
  return format == InputFormat::Csv ? parse_csv(in, columns) : parse_jsonl(in);
}

ParseResult parse_event_records(const std::filesystem::path& path, InputFormat format,
                                const CsvColumns& columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  return parse_event_records(in, format, columns);
}

ConstructedSymbols construct_symbols(const RawEvent& e, Vocab& vocab) {
  ConstructedSymbols out;
  for (const auto& a : e.actors) {
    out.actors.push_back(vocab.entities.intern(EntityKind::Country, a.country, a.sector));
  }
  std::string relation = e.event_type;
  if (e.event_mode && !e.event_mode->empty()) relation += " (" + *e.event_mode + ")";
  out.relation = vocab.relations.intern(relation);
  for (const auto& r : e.recipients) {
    out.recipients.push_back(vocab.entities.intern(EntityKind::Country, r.country, r.sector));
  }
  if (e.location && !e.location->empty()) {
    out.qualifiers.push_back(
        {kLocation, vocab.entities.intern(EntityKind::Country, *e.location, std::nullopt)});
  }
  for (const auto& c : e.contexts) {
    out.qualifiers.push_back({kContext, vocab.entities.intern(EntityKind::Context, c, std::nullopt)});
  }
  return out;
}

std::optional<DropReason> integrity_violation(const FactCandidate& c) {
  auto distinct = [](std::vector<EntityId> ids) {
    std::sort(ids.begin(), ids.end());
    return static_cast<std::size_t>(std::unique(ids.begin(), ids.end()) - ids.begin());
  };
  const std::size_t actors = distinct(c.actors);
  if (actors == 0) return DropReason::NoActors;
  if (actors + distinct(c.recipients) <= 1) return DropReason::LoneActor;
  return std::nullopt;
}

FilterOutcome apply_integrity_filter(std::vector<FactCandidate> candidates) {
  FilterOutcome out;
  for (auto& c : candidates) {
    if (auto why = integrity_violation(c)) {
      ++out.dropped;
      if (*why == DropReason::NoActors) {
        ++out.dropped_no_actors;
      } else {
        ++out.dropped_lone_actor;
      }
      continue;
    }
    out.kept.push_back(std::move(c));
  }
  return out;
}

BuildResult build_dataset(const std::vector<RawEvent>& raw, const BuildOptions& options) {
  BuildReport report;
  Vocab working;
  std::vector<FactCandidate> candidates;

  auto resolvable = [&](const ActorPair& p) {
    if (p.country.empty()) return false;
    return options.known_countries.empty() || options.known_countries.contains(p.country);
  };

  for (std::size_t i = 0; i < raw.size(); ++i) {
    const RawEvent& e = raw[i];
    const ActorPair* bad = nullptr;
    for (const auto* side : {&e.actors, &e.recipients}) {
      for (const auto& p : *side) {
        if (!bad && !resolvable(p)) bad = &p;
      }
    }
    if (bad) {
      report.unresolvable.push_back({e.line, "unresolvable country '" + bad->country + "'"});
      continue;
    }
    auto sym = construct_symbols(e, working);
    candidates.push_back({std::move(sym.actors), sym.relation, std::move(sym.recipients),
                          Timestamp::from_iso(e.date), std::move(sym.qualifiers), i});
  }

  auto filtered = apply_integrity_filter(std::move(candidates));
  report.dropped_no_actors = filtered.dropped_no_actors;
  report.dropped_lone_actor = filtered.dropped_lone_actor;
  report.kept = filtered.kept.size();

  std::vector<Fact> facts;
  facts.reserve(filtered.kept.size());
  for (auto& c : filtered.kept) {
    facts.push_back(make_fact(std::move(c.actors), c.relation, std::move(c.recipients), c.t,
                              std::move(c.qualifiers), c.seq));
  }
  return {Dataset::assemble(std::move(facts), working, "ingest"), std::move(report)};
}

BuildResult build_dataset(const ParseResult& parsed, const BuildOptions& options) {
  auto result = build_dataset(parsed.events, options);
  result.report.parse_errors = parsed.errors;
  return result;
}

}  // namespace htkgh
