#pragma once

#include <cstdint>
#include <vector>

#include "htkgh/retrieval.hpp"

namespace htkgh {

// round(x) with halves going up; a 1e-9 slack absorbs binary representation
// error in products such as 0.01 * 250.
std::size_t round_half_up(double x);

// Drops facts before `drop_before`, bins the rest by (year, relation) and
// draws round_half_up(fraction * |bin|) facts per bin with a seeded shuffle.
// Queries come back in dataset order with qid = 0, 1, ...
// Throws Error(ConfigInvalid) unless 0 < fraction <= 1.
std::vector<RelationQuery> build_test_set(const Dataset& d, double fraction, std::uint64_t seed,
                                          Timestamp drop_before);

}  // namespace htkgh
