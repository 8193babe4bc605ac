#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace macrostate {

/// Day-resolution calendar date.
using Date = std::chrono::year_month_day;

/// Parses a strict ISO-8601 `YYYY-MM-DD` date. Returns nullopt for anything
/// else, including well-formed but nonexistent dates such as 2009-02-29.
std::optional<Date> parse_iso_date(std::string_view text);

std::string format_iso_date(const Date& date);

bool is_weekend(const Date& date);

/// The first weekday at or after `date`.
Date roll_to_weekday(const Date& date);

/// The next weekday strictly after `date`.
Date next_weekday(const Date& date);

}  // namespace macrostate
