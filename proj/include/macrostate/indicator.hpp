#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "macrostate/calendar.hpp"
#include "macrostate/market_data.hpp"

namespace macrostate {

/// Activity a_t = p_t * V_t of one bar.
struct ActivityPoint {
  Date timestamp;
  double activity = 0.0;
};

/// Normalized volatility (a_t - a_{t-1}) / a_{t-1}, stamped with the date of a_t.
struct VolatilityPoint {
  Date timestamp;
  double vol_n = 0.0;
};

/// Whether the macrostate mean uses signed terms (the defining formula) or
/// their magnitudes.
enum class TermMode { Signed, Absolute };

enum class Bucketing { Yearly, Monthly };

struct CalendarBucket {
  Bucketing kind = Bucketing::Yearly;
  int year = 0;
  unsigned month = 0;  // 1-12 for monthly buckets, 0 for yearly

  friend bool operator==(const CalendarBucket&, const CalendarBucket&) = default;
  friend auto operator<=>(const CalendarBucket&, const CalendarBucket&) = default;
};

std::string to_string(const CalendarBucket& bucket);

struct Period {
  Date start;
  Date end;

  friend bool operator==(const Period&, const Period&) = default;
};

/// Macrostate parameter (economic entropy) P_M of one symbol over one period:
/// the mean of its normalized volatility terms.
struct MacrostateReport {
  std::string symbol;
  Period period;  // first to last term timestamp
  double p_m = 0.0;
  std::size_t n_transitions = 0;
  double min_vol = 0.0;
  double max_vol = 0.0;
  std::optional<CalendarBucket> bucket;  // set by period_macrostate
};

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// One activity point per bar. Throws InsufficientObservations on an empty
/// series.
std::vector<ActivityPoint> activity_series(const SymbolSeries& series);

/// Throws InsufficientObservations below two points and DataError on a
/// non-positive activity.
std::vector<VolatilityPoint> normalized_volatility(std::span<const ActivityPoint> activities);

MacrostateReport macrostate_parameter(std::span<const VolatilityPoint> vols,
                                      TermMode mode = TermMode::Signed);

/// activity -> normalized volatility -> macrostate over the whole series.
MacrostateReport series_macrostate(const SymbolSeries& series, TermMode mode = TermMode::Signed);

CalendarBucket bucket_of(const Date& date, Bucketing bucketing);

struct PeriodBreakdown {
  std::vector<MacrostateReport> reports;  // ordered by period start
  std::size_t omitted_buckets = 0;        // buckets with fewer than 2 bars
};

/// Per-calendar-bucket macrostate. Transitions never straddle a bucket
/// boundary. Throws DataError("no computable periods") if no bucket holds
/// two bars.
PeriodBreakdown period_macrostate(const SymbolSeries& series, Bucketing bucketing,
                                  TermMode mode = TermMode::Signed);

struct RollingPoint {
  Date timestamp;  // last term in the window
  double p_m = 0.0;

  friend bool operator==(const RollingPoint&, const RollingPoint&) = default;
};

/// Sliding mean over `window` consecutive terms, advancing by `step` terms.
std::vector<RollingPoint> rolling_macrostate(std::span<const VolatilityPoint> vols,
                                             std::size_t window, std::size_t step,
                                             TermMode mode = TermMode::Signed);

std::vector<RollingPoint> rolling_macrostate(const SymbolSeries& series, std::size_t window,
                                             std::size_t step, TermMode mode = TermMode::Signed);

struct PeakRun {
  Date start;
  Date end;
  double peak = 0.0;  // largest |p_m| inside the run
  std::size_t first_index = 0;
  std::size_t last_index = 0;
};

inline constexpr double kDefaultPeakFactor = 3.0;

/// Maximal runs where |p_m| exceeds factor * median(|p_m|). With a zero
/// median every strictly positive |p_m| qualifies.
std::vector<PeakRun> detect_peaks(std::span<const RollingPoint> rolling,
                                  double factor = kDefaultPeakFactor);

}  // namespace macrostate
