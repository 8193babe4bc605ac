#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace macrostate {

/// Maximum significant digits emitted by format_number.
inline constexpr int kMaxSignificantDigits = 10;

/// Shortest decimal that round-trips to `value`, capped at 10 significant
/// digits. Locale-independent; `-0` renders as `0`.
std::string format_number(double value);

/// Fixed-point rendering with `decimals` places, locale-independent.
std::string format_fixed(double value, int decimals);

/// Rounds `value` to what format_number would print.
double round_to_rendered(double value);

/// Locale-independent parse of a complete decimal literal. Rejects trailing
/// garbage, empty input and non-finite results.
std::optional<double> parse_number(std::string_view text);

}  // namespace macrostate
