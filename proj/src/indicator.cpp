#include "macrostate/indicator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "macrostate/error.hpp"
#include "macrostate/number_format.hpp"

namespace macrostate {

namespace {

double term(const VolatilityPoint& v, TermMode mode) {
  return mode == TermMode::Absolute ? std::fabs(v.vol_n) : v.vol_n;
}

// Rounding in the compensated mean can land one ulp outside the range of
// nearly equal terms, so the result is clamped into [min, max].
double mean_of_terms(std::span<const VolatilityPoint> vols, TermMode mode) {
  CompensatedSum sum;
  double lo = term(vols.front(), mode);
  double hi = lo;
  for (const auto& v : vols) {
    const double x = term(v, mode);
    sum.add(x);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return std::clamp(sum.value() / static_cast<double>(vols.size()), lo, hi);
}

double median(std::vector<double> values) {
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return lower + (upper - lower) / 2.0;
}

}  // namespace

std::string to_string(const CalendarBucket& bucket) {
  std::string out = std::to_string(bucket.year);
  if (bucket.kind == Bucketing::Monthly) {
    out += bucket.month < 10 ? "-0" : "-";
    out += std::to_string(bucket.month);
  }
  return out;
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

std::vector<ActivityPoint> activity_series(const SymbolSeries& series) {
  if (series.bars.empty()) throw InsufficientObservations("empty series " + series.symbol);
  std::vector<ActivityPoint> out;
  out.reserve(series.bars.size());
  for (const Bar& bar : series.bars) out.push_back({bar.timestamp, bar.price * bar.volume});
  return out;
}

std::vector<VolatilityPoint> normalized_volatility(std::span<const ActivityPoint> activities) {
  if (activities.size() < 2) {
    throw InsufficientObservations(std::to_string(activities.size()) + " activity point(s), need 2");
  }
  for (const auto& a : activities) {
    if (!(a.activity > 0.0) || !std::isfinite(a.activity)) {
      throw DataError("non-positive activity on " + format_iso_date(a.timestamp));
    }
  }
  std::vector<VolatilityPoint> out;
  out.reserve(activities.size() - 1);
  for (std::size_t i = 1; i < activities.size(); ++i) {
    const double prev = activities[i - 1].activity;
    out.push_back({activities[i].timestamp, (activities[i].activity - prev) / prev});
  }
  return out;
}

MacrostateReport macrostate_parameter(std::span<const VolatilityPoint> vols, TermMode mode) {
  if (vols.empty()) throw InsufficientObservations("no volatility terms");
  MacrostateReport report;
  report.period = {vols.front().timestamp, vols.back().timestamp};
  report.n_transitions = vols.size();
  report.p_m = mean_of_terms(vols, mode);
  report.min_vol = report.max_vol = term(vols.front(), mode);
  for (const auto& v : vols) {
    report.min_vol = std::min(report.min_vol, term(v, mode));
    report.max_vol = std::max(report.max_vol, term(v, mode));
  }
  return report;
}

MacrostateReport series_macrostate(const SymbolSeries& series, TermMode mode) {
  const auto activities = activity_series(series);
  const auto vols = normalized_volatility(activities);
  auto report = macrostate_parameter(vols, mode);
  report.symbol = series.symbol;
  return report;
}

CalendarBucket bucket_of(const Date& date, Bucketing bucketing) {
  CalendarBucket bucket{bucketing, static_cast<int>(date.year()), 0};
  if (bucketing == Bucketing::Monthly) bucket.month = static_cast<unsigned>(date.month());
  return bucket;
}

PeriodBreakdown period_macrostate(const SymbolSeries& series, Bucketing bucketing, TermMode mode) {
  std::map<CalendarBucket, std::vector<ActivityPoint>> buckets;
  for (const auto& point : activity_series(series)) {
    buckets[bucket_of(point.timestamp, bucketing)].push_back(point);
  }
  PeriodBreakdown out;
  for (const auto& [bucket, points] : buckets) {
    if (points.size() < 2) {
      ++out.omitted_buckets;
      continue;
    }
    const auto vols = normalized_volatility(points);
    auto report = macrostate_parameter(vols, mode);
    report.symbol = series.symbol;
    report.bucket = bucket;
    out.reports.push_back(std::move(report));
  }
  if (out.reports.empty()) throw DataError("no computable periods for " + series.symbol);
  return out;
}

std::vector<RollingPoint> rolling_macrostate(std::span<const VolatilityPoint> vols,
                                             std::size_t window, std::size_t step, TermMode mode) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  if (step < 1) throw std::invalid_argument("step must be >= 1");
  if (window > vols.size()) {
    throw DataError("window of " + std::to_string(window) + " transitions exceeds the " +
                    std::to_string(vols.size()) + " available");
  }
  std::vector<RollingPoint> out;
  out.reserve((vols.size() - window) / step + 1);
  for (std::size_t start = 0; start + window <= vols.size(); start += step) {
    const auto slice = vols.subspan(start, window);
    out.push_back({slice.back().timestamp, mean_of_terms(slice, mode)});
  }
  return out;
}

std::vector<RollingPoint> rolling_macrostate(const SymbolSeries& series, std::size_t window,
                                             std::size_t step, TermMode mode) {
  const auto activities = activity_series(series);
  const auto vols = normalized_volatility(activities);
  try {
    return rolling_macrostate(vols, window, step, mode);
  } catch (const DataError& e) {
    throw DataError(series.symbol + ": " + e.what());
  }
}

std::vector<PeakRun> detect_peaks(std::span<const RollingPoint> rolling, double factor) {
  if (rolling.empty()) throw InsufficientObservations("empty rolling series");
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw std::invalid_argument("peak factor must be a positive number");
  }
  std::vector<double> magnitudes;
  magnitudes.reserve(rolling.size());
  for (const auto& point : rolling) magnitudes.push_back(std::fabs(point.p_m));
  const double threshold = factor * median(magnitudes);

  std::vector<PeakRun> runs;
  std::optional<PeakRun> current;
  for (std::size_t i = 0; i < rolling.size(); ++i) {
    if (magnitudes[i] > threshold) {
      if (!current) current = PeakRun{rolling[i].timestamp, rolling[i].timestamp, 0.0, i, i};
      current->end = rolling[i].timestamp;
      current->last_index = i;
      current->peak = std::max(current->peak, magnitudes[i]);
    } else if (current) {
      runs.push_back(*current);
      current.reset();
    }
  }
  if (current) runs.push_back(*current);
  return runs;
}

}  // namespace macrostate
