#include "htkgh/fact_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "htkgh/error.hpp"

namespace htkgh {

using ordered_json = nlohmann::ordered_json;

std::string fact_to_json_line(const Fact& f, const Vocab& vocab) {
  ordered_json line;
  auto labels = [&](const std::vector<EntityId>& ids) {
    auto arr = ordered_json::array();
    for (EntityId id : ids) arr.push_back(vocab.entities.label(id));
    return arr;
  };
  line["a"] = labels(f.actors);
  line["r"] = vocab.relations.label(f.relation);
  line["rc"] = labels(f.recipients);
  line["t"] = f.t.iso();
  auto quals = ordered_json::array();
  for (const auto& q : f.qualifiers) {
    quals.push_back(ordered_json::array(
        {vocab.qualifier_relations.label(q.qrel), vocab.entities.label(q.value)}));
  }
  line["q"] = std::move(quals);
  return line.dump();
}

void write_fact_file(std::ostream& out, const Dataset& d) {
  for (const Fact& f : d.facts()) out << fact_to_json_line(f, d.vocab()) << '\n';
  if (!out) throw Error(Errc::Io, "failed writing fact file");
}

void write_fact_file(const std::filesystem::path& path, const Dataset& d) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot open " + path.string() + " for writing");
  write_fact_file(out, d);
}

namespace {

Fact parse_fact_line(const std::string& text, std::size_t line_no, Vocab& vocab, bool strict) {
  auto fail = [&](const std::string& msg) -> Error {
    return Error(Errc::Parse, "line " + std::to_string(line_no) + ": " + msg);
  };
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw fail(e.what());
  }
  if (!j.is_object()) throw fail("expected a JSON object");
  for (const char* key : {"a", "r", "rc", "t", "q"}) {
    if (!j.contains(key)) throw fail(std::string("missing field '") + key + "'");
  }
  try {
    auto entities = [&](const nlohmann::json& arr) {
      std::vector<EntityId> ids;
      for (const auto& label : arr) {
        ids.push_back(vocab.entities.intern_label(EntityKind::Country, label.get<std::string>()));
      }
      return ids;
    };
    std::vector<EntityId> actors = entities(j.at("a"));
    const RelationId relation = vocab.relations.intern(j.at("r").get<std::string>());
    std::vector<EntityId> recipients = entities(j.at("rc"));
    auto t = Timestamp::try_from_iso(j.at("t").get<std::string>());
    if (!t) throw fail("invalid date");
    std::vector<QualifierPair> quals;
    for (const auto& pair : j.at("q")) {
      if (!pair.is_array() || pair.size() != 2) throw fail("qualifier must be [qrel, label]");
      const QualRelId qrel = vocab.qualifier_relations.intern(pair[0].get<std::string>());
      const EntityId value =
          vocab.entities.intern_label(vocab.kind_for_qualifier(qrel), pair[1].get<std::string>());
      quals.push_back({qrel, value});
    }
    if (!strict) {
      return Fact{std::move(actors), relation, std::move(recipients), *t, std::move(quals),
                  line_no - 1};
    }
    try {
      return make_fact(std::move(actors), relation, std::move(recipients), *t, std::move(quals),
                       line_no - 1);
    } catch (const Error& e) {
      throw fail(e.what());
    }
  } catch (const nlohmann::json::exception& e) {
    throw fail(e.what());
  }
}

}  // namespace

Dataset read_fact_file(std::istream& in, const FactFileOptions& options, std::string meta) {
  Vocab vocab;
  std::vector<Fact> facts;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.empty()) continue;
    facts.push_back(parse_fact_line(text, line_no, vocab, options.strict));
  }
  if (in.bad()) throw Error(Errc::Io, "read failure");
  if (options.sort) return Dataset::assemble(std::move(facts), vocab, std::move(meta));
  return Dataset(std::move(facts), std::move(vocab), std::move(meta));
}

Dataset read_fact_file(const std::filesystem::path& path, const FactFileOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  return read_fact_file(in, options, "file:" + path.string());
}

}  // namespace htkgh
