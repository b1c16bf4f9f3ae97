#include "htkgh/provider.hpp"

#include <sstream>
#include <string_view>
#include <vector>

namespace htkgh {

std::string EchoGoldProvider::complete(const CompletionRequest& request) {
  const auto it = gold_.find(request.qid);
  if (it == gold_.end()) throw ProviderError("no gold label for qid " + std::to_string(request.qid));
  return it->second;
}

std::string FrequencyStubProvider::complete(const CompletionRequest& request) {
  // History lines are the only lines starting with "time: " whose relation
  // field is not the query placeholder.
  static constexpr std::string_view kRel = " | relation: ";
  static constexpr std::string_view kRecip = " | recipients: ";
  std::vector<std::string> order;
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> stats;  // count, last line
  std::istringstream in(request.prompt);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    if (line.rfind("time: ", 0) != 0) continue;
    const auto a = line.find(kRel);
    if (a == std::string::npos) continue;
    const auto b = line.find(kRecip, a + kRel.size());
    if (b == std::string::npos) continue;
    std::string rel = line.substr(a + kRel.size(), b - a - kRel.size());
    if (rel == "?") continue;
    auto& s = stats[rel];
    ++s.first;
    s.second = n++;
    if (s.first == 1) order.push_back(rel);
  }
  std::string best;
  std::pair<std::size_t, std::size_t> best_stat{0, 0};
  for (const auto& rel : order) {
    const auto& s = stats[rel];
    if (best.empty() || s > best_stat) {
      best = rel;
      best_stat = s;
    }
  }
  return best;
}

}  // namespace htkgh
