#include "htkgh/timestamp.hpp"

#include <chrono>
#include <cstdio>

#include "htkgh/error.hpp"

namespace htkgh {

namespace {

using namespace std::chrono;

bool parse_digits(std::string_view s, int& out) {
  out = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    out = out * 10 + (c - '0');
  }
  return !s.empty();
}

year_month_day to_ymd(std::int32_t day) { return year_month_day{sys_days{days{day}}}; }

}  // namespace

std::optional<Timestamp> Timestamp::try_from_iso(std::string_view iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_digits(iso.substr(0, 4), y) || !parse_digits(iso.substr(5, 2), m) ||
      !parse_digits(iso.substr(8, 2), d)) {
    return std::nullopt;
  }
  const year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)}, std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return Timestamp{static_cast<std::int32_t>(sys_days{ymd}.time_since_epoch().count())};
}

Timestamp Timestamp::from_iso(std::string_view iso) {
  auto t = try_from_iso(iso);
  if (!t) throw Error(Errc::Parse, "invalid date '" + std::string(iso) + "', expected YYYY-MM-DD");
  return *t;
}

Timestamp Timestamp::from_ymd(int y, unsigned m, unsigned d) {
  const year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!ymd.ok()) throw Error(Errc::Parse, "invalid calendar date");
  return Timestamp{static_cast<std::int32_t>(sys_days{ymd}.time_since_epoch().count())};
}

std::string Timestamp::iso() const {
  const auto ymd = to_ymd(day_);
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

int Timestamp::year() const { return static_cast<int>(to_ymd(day_).year()); }

}  // namespace htkgh
