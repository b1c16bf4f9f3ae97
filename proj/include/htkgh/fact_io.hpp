#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "htkgh/dataset.hpp"

namespace htkgh {

// Canonical fact file: JSON Lines, one fact per line,
//   {"a":[labels],"r":label,"rc":[labels],"t":"YYYY-MM-DD","q":[[qrel,label],...]}
// Lines are ordered by (date, file order). The vocab is rebuilt on load.

std::string fact_to_json_line(const Fact& f, const Vocab& vocab);

void write_fact_file(std::ostream& out, const Dataset& d);
void write_fact_file(const std::filesystem::path& path, const Dataset& d);

struct FactFileOptions {
  // Reject facts breaking the fact invariants (Error(Parse) with the line
  // number). When false they are loaded as-is so validate_dataset can report.
  bool strict = true;
  // Stable-sort by date; off keeps file order for sort-order validation.
  bool sort = true;
};

// seq of each fact is its 0-based line index.
Dataset read_fact_file(std::istream& in, const FactFileOptions& options = {},
                       std::string meta = {});
Dataset read_fact_file(const std::filesystem::path& path, const FactFileOptions& options = {});

}  // namespace htkgh
