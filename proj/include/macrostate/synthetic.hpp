#pragma once

#include <cstddef>
#include <cstdint>

#include "macrostate/calendar.hpp"
#include "macrostate/market_data.hpp"

namespace macrostate {

/// Geometric-Brownian price path with log-normal volumes.
struct GbmSpec {
  std::uint64_t seed = 0;
  std::size_t n_days = 2;
  Date start{std::chrono::year{2008}, std::chrono::January, std::chrono::day{1}};
  double initial_price = 1.0;
  double drift = 0.0;       // per day
  double volatility = 0.0;  // per sqrt(day)
  double volume_median = 1.0;
  double volume_sigma = 0.0;  // log-space
};

struct ShockSpec {
  std::size_t start_index = 0;
  std::size_t duration = 1;
  double volume_multiplier = 1.0;
  double price_jump = 0.0;  // fractional, applied on the first shock day
};

/// Throws std::invalid_argument naming the first violated constraint.
void validate(const GbmSpec& spec);

/// Standard normal quantile (Acklam's rational approximation). `p` in (0, 1).
double inverse_normal_cdf(double p);

/// Deterministic path. The stream is std::mt19937_64 seeded with `seed`;
/// each output u = ((x >> 11) + 0.5) * 2^-53 lies in (0, 1). Every day
/// consumes two draws: the first drives the price step into that day (unused
/// on day 0), the second the volume. Normals come from inverse_normal_cdf.
/// Bars fall on consecutive weekdays starting at the first weekday on or
/// after `start`.
SymbolSeries generate(const GbmSpec& spec, const std::string& symbol = "SYN");

/// Multiplies volume by the multiplier over the window and the first shocked
/// price by (1 + price_jump). Throws std::invalid_argument for an
/// out-of-range window and DataError("non-positive price") if the jump
/// would zero or negate the price.
SymbolSeries inject_shock(const SymbolSeries& series, const ShockSpec& shock);

}  // namespace macrostate
