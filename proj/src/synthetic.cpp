#include "macrostate/synthetic.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "macrostate/error.hpp"

namespace macrostate {

namespace {

double uniform_open(std::mt19937_64& rng) {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(rng() >> 11) + 0.5) * kScale;
}

}  // namespace

void validate(const GbmSpec& spec) {
  if (spec.n_days < 2) throw std::invalid_argument("n_days must be ≥ 2");
  if (!(spec.initial_price > 0.0) || !std::isfinite(spec.initial_price)) {
    throw std::invalid_argument("initial_price must be > 0");
  }
  if (!std::isfinite(spec.drift)) throw std::invalid_argument("drift must be finite");
  if (!(spec.volatility >= 0.0) || !std::isfinite(spec.volatility)) {
    throw std::invalid_argument("volatility must be ≥ 0");
  }
  if (!(spec.volume_median > 0.0) || !std::isfinite(spec.volume_median)) {
    throw std::invalid_argument("volume_median must be > 0");
  }
  if (!(spec.volume_sigma >= 0.0) || !std::isfinite(spec.volume_sigma)) {
    throw std::invalid_argument("volume_sigma must be ≥ 0");
  }
  if (!spec.start.ok()) throw std::invalid_argument("start date is not a valid calendar date");
}

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("probability must lie in (0, 1)");
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;
  constexpr double kHigh = 1.0 - kLow;

  if (p < kLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > kHigh) {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

SymbolSeries generate(const GbmSpec& spec, const std::string& symbol) {
  validate(spec);
  std::mt19937_64 rng(spec.seed);
  const double step_drift = spec.drift - spec.volatility * spec.volatility / 2.0;

  SymbolSeries series{symbol, {}, GapPolicy::Skip};
  series.bars.reserve(spec.n_days);
  Date day = roll_to_weekday(spec.start);
  double price = spec.initial_price;
  for (std::size_t t = 0; t < spec.n_days; ++t) {
    const double z = inverse_normal_cdf(uniform_open(rng));
    const double w = inverse_normal_cdf(uniform_open(rng));
    if (t > 0) {
      price *= std::exp(step_drift + spec.volatility * z);
      day = next_weekday(day);
    }
    const double volume = spec.volume_median * std::exp(spec.volume_sigma * w);
    series.bars.push_back({day, price, volume});
  }
  return series;
}

SymbolSeries inject_shock(const SymbolSeries& series, const ShockSpec& shock) {
  if (shock.duration < 1) throw std::invalid_argument("shock duration must be ≥ 1");
  if (shock.start_index + shock.duration > series.bars.size()) {
    throw std::invalid_argument("shock window [" + std::to_string(shock.start_index) + ", " +
                                std::to_string(shock.start_index + shock.duration) +
                                ") exceeds series of " + std::to_string(series.bars.size()) +
                                " bars");
  }
  if (!(shock.volume_multiplier > 0.0) || !std::isfinite(shock.volume_multiplier)) {
    throw std::invalid_argument("volume multiplier must be > 0");
  }
  if (!std::isfinite(shock.price_jump)) throw std::invalid_argument("price jump must be finite");
  if (shock.price_jump <= -1.0) throw DataError("non-positive price");

  SymbolSeries out = series;
  for (std::size_t i = shock.start_index; i < shock.start_index + shock.duration; ++i) {
    out.bars[i].volume *= shock.volume_multiplier;
  }
  auto& first = out.bars[shock.start_index];
  first.price *= 1.0 + shock.price_jump;
  if (!(first.price > 0.0)) throw DataError("non-positive price");
  return out;
}

}  // namespace macrostate
