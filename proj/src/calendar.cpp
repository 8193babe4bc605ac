#include "macrostate/calendar.hpp"

#include <charconv>
#include <cstdio>

namespace macrostate {

namespace {

bool parse_fixed_digits(std::string_view text, int& out) {
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

std::optional<Date> parse_iso_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0;
  int m = 0;
  int d = 0;
  if (!parse_fixed_digits(text.substr(0, 4), y) || !parse_fixed_digits(text.substr(5, 2), m) ||
      !parse_fixed_digits(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
            std::chrono::day{static_cast<unsigned>(d)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_iso_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

bool is_weekend(const Date& date) {
  const std::chrono::weekday wd{std::chrono::sys_days{date}};
  return wd == std::chrono::Saturday || wd == std::chrono::Sunday;
}

Date roll_to_weekday(const Date& date) {
  std::chrono::sys_days day{date};
  while (is_weekend(Date{day})) day += std::chrono::days{1};
  return Date{day};
}

Date next_weekday(const Date& date) {
  return roll_to_weekday(Date{std::chrono::sys_days{date} + std::chrono::days{1}});
}

}  // namespace macrostate
