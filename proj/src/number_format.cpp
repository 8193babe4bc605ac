#include "macrostate/number_format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace macrostate {

namespace {

int significant_digits(std::string_view rendered) {
  int count = 0;
  bool leading = true;
  for (char c : rendered) {
    if (c == 'e' || c == 'E') break;
    if (c < '0' || c > '9') continue;
    if (leading && c == '0') continue;
    leading = false;
    ++count;
  }
  return count;
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("cannot render non-finite number");
  if (value == 0.0) return "0";
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general);
  std::string out(buf.data(), res.ptr);
  if (significant_digits(out) <= kMaxSignificantDigits) return out;
  res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general,
                      kMaxSignificantDigits);
  out.assign(buf.data(), res.ptr);
  // %g-style precision output is already stripped of trailing zeros, but a
  // 10-digit rounding may land on a value with a shorter representation.
  const double rounded = *parse_number(out);
  res = std::to_chars(buf.data(), buf.data() + buf.size(), rounded, std::chars_format::general);
  return std::string(buf.data(), res.ptr);
}

std::string format_fixed(double value, int decimals) {
  if (!std::isfinite(value)) throw std::invalid_argument("cannot render non-finite number");
  if (value == 0.0) value = 0.0;
  std::array<char, 400> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed,
                           decimals);
  return std::string(buf.data(), res.ptr);
}

double round_to_rendered(double value) { return *parse_number(format_number(value)); }

std::optional<double> parse_number(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace macrostate
