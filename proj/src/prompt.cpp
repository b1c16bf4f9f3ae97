#include "htkgh/prompt.hpp"

#include "htkgh/error.hpp"
#include "htkgh/prompt_templates.hpp"
#include "htkgh/random.hpp"

namespace htkgh {

namespace {

std::string_view strip_final_newline(std::string_view s) {
  if (!s.empty() && s.back() == '\n') s.remove_suffix(1);
  return s;
}

std::string render_line(Timestamp t, const std::vector<EntityId>& actors, std::string_view relation,
                        const std::vector<EntityId>& recipients, const std::vector<QualifierPair>& quals,
                        const Vocab& vocab) {
  auto list = [&](const std::vector<EntityId>& ids) {
    std::string out = "[";
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) out += ", ";
      out += vocab.entities.label(ids[i]);
    }
    return out + "]";
  };
  std::string line = "time: " + t.iso();
  line += " | actors: " + list(actors);
  line += " | relation: ";
  line += relation;
  line += " | recipients: " + list(recipients);
  line += " | qualifiers: [";
  for (std::size_t i = 0; i < quals.size(); ++i) {
    if (i) line += ", ";
    line += vocab.qualifier_relations.label(quals[i].qrel);
    line += ": ";
    line += vocab.entities.label(quals[i].value);
  }
  line += "]";
  return line;
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

std::string_view to_string(PromptMode mode) {
  return mode == PromptMode::Thinking ? "thinking" : "nonthinking";
}

PromptMode parse_prompt_mode(std::string_view name) {
  if (name == "nonthinking" || name == "non-thinking") return PromptMode::NonThinking;
  if (name == "thinking") return PromptMode::Thinking;
  throw Error(Errc::ConfigInvalid, "unknown prompt mode '" + std::string(name) + "'");
}

std::size_t default_max_tokens(PromptMode mode) {
  return mode == PromptMode::Thinking ? kThinkingMaxTokens : kNonThinkingMaxTokens;
}

std::string_view prompt_template(PromptMode mode) {
  return strip_final_newline(mode == PromptMode::Thinking ? detail::kThinkingTemplate
                                                          : detail::kNonThinkingTemplate);
}

std::string render_fact(const Fact& f, const Vocab& vocab) {
  return render_line(f.t, f.actors, vocab.relations.label(f.relation), f.recipients, f.qualifiers, vocab);
}

std::string render_query(const RelationQuery& q, const Vocab& vocab) {
  return render_line(q.t, q.actors, "?", q.recipients, q.qualifiers, vocab);
}

std::vector<Candidate> candidate_list(const Vocab& vocab, std::optional<std::uint64_t> shuffle_seed,
                                      std::uint64_t qid) {
  std::vector<Candidate> out;
  out.reserve(vocab.relations.size());
  for (std::uint32_t i = 0; i < vocab.relations.size(); ++i) {
    out.push_back({RelationId{i}, vocab.relations.label(RelationId{i})});
  }
  if (shuffle_seed) {
    Rng rng(mix(*shuffle_seed ^ mix(qid)));
    rng.shuffle(std::span<Candidate>(out));
  }
  return out;
}

PromptInstance render_prompt(const RelationQuery& q, const HistoryContext& hc, const Vocab& vocab,
                             PromptMode mode, const PromptOptions& options) {
  PromptInstance p;
  p.qid = q.qid;
  p.mode = mode;
  p.max_tokens = options.max_tokens.value_or(default_max_tokens(mode));
  p.candidates = candidate_list(vocab, options.shuffle_candidates, q.qid);

  std::string context;
  for (std::size_t i = 0; i < hc.facts.size(); ++i) {
    if (i) context += '\n';
    context += render_fact(hc.facts[i], vocab);
  }
  std::string candidates;
  for (std::size_t i = 0; i < p.candidates.size(); ++i) {
    if (i) candidates += '\n';
    candidates += std::to_string(i + 1) + ") " + p.candidates[i].label;
  }
  const std::string fact = render_query(q, vocab);

  // Single left-to-right pass so substituted text is never rescanned.
  const std::string_view tpl = prompt_template(mode);
  std::string& out = p.text;
  out.reserve(tpl.size() + context.size() + candidates.size() + fact.size());
  std::size_t i = 0;
  while (i < tpl.size()) {
    if (tpl[i] == '{') {
      const auto close = tpl.find('}', i);
      if (close != std::string_view::npos) {
        const auto name = tpl.substr(i + 1, close - i - 1);
        const std::string* value = name == "context_samples" ? &context
                                   : name == "fact"          ? &fact
                                   : name == "candidates"    ? &candidates
                                                             : nullptr;
        if (value) {
          out += *value;
          i = close + 1;
          continue;
        }
      }
    }
    out += tpl[i++];
  }
  return p;
}

}  // namespace htkgh
