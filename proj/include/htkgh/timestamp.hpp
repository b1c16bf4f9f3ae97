#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace htkgh {

// Day-granular time point, stored as days since 1970-01-01.
class Timestamp {
 public:
  constexpr Timestamp() = default;
  constexpr explicit Timestamp(std::int32_t day) : day_(day) {}

  // Strict "YYYY-MM-DD" with a valid calendar date; throws Error(Parse).
  static Timestamp from_iso(std::string_view iso);
  static std::optional<Timestamp> try_from_iso(std::string_view iso);
  static Timestamp from_ymd(int year, unsigned month, unsigned day);

  constexpr std::int32_t day() const { return day_; }
  std::string iso() const;
  int year() const;

  constexpr auto operator<=>(const Timestamp&) const = default;

 private:
  std::int32_t day_ = 0;
};

}  // namespace htkgh
