#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "htkgh/fact.hpp"
#include "htkgh/vocab.hpp"

namespace htkgh {

// Time-ordered fact store plus its vocabulary. Immutable once built; any
// number of readers may share one instance.
class Dataset {
 public:
  Dataset() = default;

  // Takes the facts as given. Use validate_dataset to check them.
  Dataset(std::vector<Fact> facts, Vocab vocab, std::string meta = {})
      : facts_(std::move(facts)), vocab_(std::move(vocab)), meta_(std::move(meta)) {}

  // Stable-sorts by (day, seq) and re-interns every symbol into a fresh vocab
  // in fact order, so ids match what a reload of the canonical file yields
  // and unreferenced symbols are dropped.
  static Dataset assemble(std::vector<Fact> facts, const Vocab& vocab, std::string meta = {});

  const std::vector<Fact>& facts() const { return facts_; }
  const Vocab& vocab() const { return vocab_; }
  const std::string& meta() const { return meta_; }
  std::size_t size() const { return facts_.size(); }
  bool empty() const { return facts_.empty(); }

  bool operator==(const Dataset& other) const {
    return facts_ == other.facts_ && vocab_ == other.vocab_;
  }

 private:
  std::vector<Fact> facts_;
  Vocab vocab_;
  std::string meta_;
};

enum class ViolationKind : std::uint8_t {
  EmptyActors,
  TooFewEntities,
  DuplicateEntity,
  UnknownSymbol,
  SortOrder,
  SelfLoop,
};

std::string_view to_string(ViolationKind kind);

enum class Severity : std::uint8_t { Error, Warning };

struct Violation {
  ViolationKind kind;
  Severity severity;
  std::size_t index;  // position in Dataset::facts()
  std::uint64_t seq;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return error_count() == 0; }
  bool empty() const { return violations.empty(); }
  std::size_t error_count() const;
  std::size_t warning_count() const;
};

// Never throws. Self-loops are reported as warnings only.
ValidationReport validate_dataset(const Dataset& d);

}  // namespace htkgh
