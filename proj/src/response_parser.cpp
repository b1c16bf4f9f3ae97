#include "htkgh/response_parser.hpp"

#include <algorithm>
#include <string>

namespace htkgh {

namespace {

char fold(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

std::string folded(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), fold);
  return out;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::string_view to_string(MatchedBy m) {
  switch (m) {
    case MatchedBy::Raw: return "raw";
    case MatchedBy::Index: return "index";
    case MatchedBy::None: return "none";
  }
  return "none";
}

ParsedAnswer parse_response(std::string_view text, std::span<const Candidate> candidates) {
  const std::string hay = folded(text);

  std::size_t best_pos = std::string::npos;
  std::size_t best_len = 0;
  const Candidate* best = nullptr;
  for (const auto& c : candidates) {
    if (c.label.empty()) continue;
    const auto pos = hay.find(folded(c.label));
    if (pos == std::string::npos) continue;
    if (pos < best_pos || (pos == best_pos && c.label.size() > best_len)) {
      best_pos = pos;
      best_len = c.label.size();
      best = &c;
    }
  }
  if (best) return {best->id, MatchedBy::Raw};

  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_digit(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_digit(text[j])) ++j;
    // Leading zeros are skipped; runs of more than nine significant digits
    // are out of range for any candidate list.
    std::size_t k = i;
    while (k + 1 < j && text[k] == '0') ++k;
    if (j - k <= 9) {
      const std::size_t value = std::stoul(std::string(text.substr(k, j - k)));
      if (value >= 1 && value <= candidates.size()) return {candidates[value - 1].id, MatchedBy::Index};
    }
    i = j;
  }
  return {};
}

}  // namespace htkgh
