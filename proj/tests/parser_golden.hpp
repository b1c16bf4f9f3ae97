#pragma once

// Golden cases for the two-tier response parser, shared by the unit suite
// and the acceptance run.

#include <string>
#include <vector>

#include "htkgh/response_parser.hpp"

namespace golden {

using namespace htkgh;

inline std::vector<Candidate> parser_candidates() {
  const char* labels[] = {"make statement", "accuse",   "protest",    "protest (strike)", "threaten",
                          "threaten (military)", "cooperate", "aid", "reject", "sanction",
                          "retreat",        "retreat (ceasefire)"};
  std::vector<Candidate> out;
  for (std::uint32_t i = 0; i < std::size(labels); ++i) out.push_back({RelationId{i}, labels[i]});
  return out;
}

struct ParserCase {
  std::string name;
  std::string text;
  int expected;  // 1-based candidate position, 0 for a misformat
  MatchedBy matched_by;
};

inline std::vector<ParserCase> parser_cases() {
  return {
      {"verbatim output format example", "protest (strike)", 4, MatchedBy::Raw},
      {"label followed by reasoning", "protest (strike)\nbecause the unions walked out", 4, MatchedBy::Raw},
      {"upper case label", "PROTEST (STRIKE)", 4, MatchedBy::Raw},
      {"title case shorter label", "Protest", 3, MatchedBy::Raw},
      {"label inside a sentence", "The most likely relation is: threaten (military).", 6, MatchedBy::Raw},
      {"bare label without mode", "threaten", 5, MatchedBy::Raw},
      {"surrounding whitespace", "   aid \n", 8, MatchedBy::Raw},
      {"earliest label wins", "accuse, then sanction", 2, MatchedBy::Raw},
      {"earliest label wins reversed", "sanction or accuse", 10, MatchedBy::Raw},
      {"longest label at the same offset", "retreat (ceasefire)", 12, MatchedBy::Raw},
      {"shorter label alone", "retreat", 11, MatchedBy::Raw},
      {"mixed case multiword", "Make Statement", 1, MatchedBy::Raw},
      {"label glued to other text", "cooperateaid", 7, MatchedBy::Raw},
      {"label inside a longer word", "protestation", 3, MatchedBy::Raw},
      {"reasoning trace mentions a label first", "<think>maybe accuse</think> reject", 2, MatchedBy::Raw},
      {"label beats a leading index", "4) protest (strike)", 4, MatchedBy::Raw},
      {"label beats a conflicting index", "2) cooperate", 7, MatchedBy::Raw},
      {"bare index", "3", 3, MatchedBy::Index},
      {"index inside a sentence", "The answer is 3.", 3, MatchedBy::Index},
      {"last valid index", "12", 12, MatchedBy::Index},
      {"first index is one based", "1", 1, MatchedBy::Index},
      {"index past the end", "13", 0, MatchedBy::None},
      {"index zero", "0", 0, MatchedBy::None},
      {"first in-range index wins", "0 then 7", 7, MatchedBy::Index},
      {"out-of-range then in-range", "Option 99, no wait, 4)", 4, MatchedBy::Index},
      {"leading zeros", "007", 7, MatchedBy::Index},
      {"index after punctuation", "#8", 8, MatchedBy::Index},
      {"no label and no number", "no idea", 0, MatchedBy::None},
      {"empty response", "", 0, MatchedBy::None},
      {"invalid utf-8 bytes", "\xff\xfe\x80 garbage", 0, MatchedBy::None},
  };
}

}  // namespace golden
