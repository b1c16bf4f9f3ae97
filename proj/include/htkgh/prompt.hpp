#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "htkgh/retrieval.hpp"

namespace htkgh {

enum class PromptMode { NonThinking, Thinking };

std::string_view to_string(PromptMode mode);
PromptMode parse_prompt_mode(std::string_view name);  // throws Error(ConfigInvalid)

inline constexpr std::size_t kNonThinkingMaxTokens = 14;
inline constexpr std::size_t kThinkingMaxTokens = 16384;

std::size_t default_max_tokens(PromptMode mode);

// Raw template text with {context_samples}, {fact} and {candidates} placeholders.
std::string_view prompt_template(PromptMode mode);

struct Candidate {
  RelationId id;
  std::string label;

  bool operator==(const Candidate&) const = default;
};

struct PromptInstance {
  std::uint64_t qid = 0;
  std::string text;
  std::vector<Candidate> candidates;  // numbered 1..|R| in the prompt
  PromptMode mode = PromptMode::NonThinking;
  std::size_t max_tokens = kNonThinkingMaxTokens;
};

struct PromptOptions {
  // Per-query seeded candidate order; relation-id order when unset.
  std::optional<std::uint64_t> shuffle_candidates;
  std::optional<std::size_t> max_tokens;
};

// time: YYYY-MM-DD | actors: [L1, L2] | relation: R | recipients: [L3] | qualifiers: [k: V, ...]
std::string render_fact(const Fact& f, const Vocab& vocab);
// Same line with "relation: ?".
std::string render_query(const RelationQuery& q, const Vocab& vocab);

std::vector<Candidate> candidate_list(const Vocab& vocab, std::optional<std::uint64_t> shuffle_seed = {},
                                      std::uint64_t qid = 0);

PromptInstance render_prompt(const RelationQuery& q, const HistoryContext& hc, const Vocab& vocab,
                             PromptMode mode, const PromptOptions& options = {});

}  // namespace htkgh
