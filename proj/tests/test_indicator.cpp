#include <gtest/gtest.h>

#include <random>

#include "macrostate/error.hpp"
#include "macrostate/indicator.hpp"
#include "test_support.hpp"

using namespace macrostate;
using macrostate::fixtures::from_activities;
using macrostate::fixtures::make_series;
using macrostate::fixtures::ymd;

namespace {

std::vector<VolatilityPoint> vols_of(const std::vector<double>& terms) {
  std::vector<VolatilityPoint> out;
  std::chrono::sys_days day{ymd(2008, 1, 2)};
  for (double t : terms) {
    out.push_back({Date{day}, t});
    day += std::chrono::days{1};
  }
  return out;
}

std::vector<ActivityPoint> acts_of(const std::vector<double>& values) {
  std::vector<ActivityPoint> out;
  std::chrono::sys_days day{ymd(2008, 1, 1)};
  for (double v : values) {
    out.push_back({Date{day}, v});
    day += std::chrono::days{1};
  }
  return out;
}

std::vector<RollingPoint> rolling_of(const std::vector<double>& values) {
  std::vector<RollingPoint> out;
  std::chrono::sys_days day{ymd(2008, 1, 1)};
  for (double v : values) {
    out.push_back({Date{day}, v});
    day += std::chrono::days{1};
  }
  return out;
}

}  // namespace

TEST(Activity, ProductOfPriceAndVolume) {
  const auto one = activity_series(make_series("X", ymd(2008, 1, 1), {10.0}, {100.0}));
  EXPECT_EQ(one[0].activity, 1000.0);
  EXPECT_EQ(activity_series(make_series("X", ymd(2008, 1, 1), {1.0}, {1.0}))[0].activity, 1.0);
  const auto two = activity_series(make_series("X", ymd(2008, 1, 1), {2, 5}, {3, 7}));
  EXPECT_EQ(two[0].activity, 6.0);
  EXPECT_EQ(two[1].activity, 35.0);
  EXPECT_EQ(two[1].timestamp, ymd(2008, 1, 2));
  EXPECT_THROW(activity_series(SymbolSeries{"X", {}, GapPolicy::Skip}), InsufficientObservations);
}

TEST(NormalizedVolatility, Examples) {
  EXPECT_EQ(normalized_volatility(acts_of({1000, 1000}))[0].vol_n, 0.0);
  EXPECT_EQ(normalized_volatility(acts_of({1000, 2000}))[0].vol_n, 1.0);
  const auto v = normalized_volatility(acts_of({100, 110, 99}));
  ASSERT_EQ(v.size(), 2u);
  EXPECT_NEAR(v[0].vol_n, 0.1, 1e-15);
  EXPECT_NEAR(v[1].vol_n, -0.1, 1e-15);
  EXPECT_EQ(v[0].timestamp, ymd(2008, 1, 2));
  EXPECT_EQ(v[1].timestamp, ymd(2008, 1, 3));
}

TEST(NormalizedVolatility, Errors) {
  EXPECT_THROW(normalized_volatility(acts_of({1000})), InsufficientObservations);
  EXPECT_THROW(normalized_volatility(acts_of({1000, 0, 10})), DataError);
  EXPECT_THROW(normalized_volatility(acts_of({-5, 10})), DataError);
}

TEST(Macrostate, Examples) {
  const auto zero = macrostate_parameter(vols_of({0.0, 0.0, 0.0}));
  EXPECT_EQ(zero.p_m, 0.0);
  EXPECT_EQ(zero.n_transitions, 3u);
  EXPECT_NEAR(macrostate_parameter(vols_of({0.1, -0.1})).p_m, 0.0, 1e-15);
  const auto single = macrostate_parameter(vols_of({1.0}));
  EXPECT_EQ(single.p_m, 1.0);
  EXPECT_EQ(single.n_transitions, 1u);
  EXPECT_THROW(macrostate_parameter(vols_of({})), InsufficientObservations);
}

TEST(Macrostate, ReportFields) {
  const auto r = macrostate_parameter(vols_of({0.5, -0.25, 2.0}));
  EXPECT_EQ(r.min_vol, -0.25);
  EXPECT_EQ(r.max_vol, 2.0);
  EXPECT_DOUBLE_EQ(r.p_m, 2.25 / 3.0);
  EXPECT_EQ(r.period.start, ymd(2008, 1, 2));
  EXPECT_EQ(r.period.end, ymd(2008, 1, 4));

  const auto a = macrostate_parameter(vols_of({0.5, -0.25, 2.0}), TermMode::Absolute);
  EXPECT_DOUBLE_EQ(a.p_m, 2.75 / 3.0);
  EXPECT_EQ(a.min_vol, 0.25);
}

TEST(Macrostate, CompensatedSumBeatsNaiveSummation) {
  CompensatedSum sum;
  sum.add(1.0);
  for (int i = 0; i < 1000; ++i) sum.add(1e-16);
  sum.add(-1.0);
  // Naive summation returns exactly 0 here.
  EXPECT_NEAR(sum.value(), 1e-13, 1e-25);
}

TEST(Macrostate, MatchesBruteForceOracle) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const auto series = fixtures::random_series(rng, 2 + trial % 49);
    for (auto mode : {TermMode::Signed, TermMode::Absolute}) {
      const auto report = series_macrostate(series, mode);
      const double oracle = fixtures::brute_force_pm(series.bars, mode == TermMode::Absolute);
      EXPECT_TRUE(fixtures::rel_close(report.p_m, oracle, 1e-12)) << report.p_m << " vs " << oracle;
      EXPECT_EQ(report.n_transitions, series.bars.size() - 1);
    }
  }
}

TEST(Macrostate, BoundsHoldOnRandomSeries) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    const auto series = fixtures::random_series(rng, 2 + trial % 60);
    const auto vols = normalized_volatility(activity_series(series));
    for (const auto& v : vols) EXPECT_GT(v.vol_n, -1.0);
    const auto report = macrostate_parameter(vols);
    EXPECT_LE(report.min_vol, report.p_m);
    EXPECT_LE(report.p_m, report.max_vol);
    EXPECT_GT(report.p_m, -1.0);
  }
}

TEST(Macrostate, MeanStaysInsideRangeOfEqualTerms) {
  for (double x : {0.1, 0.3, 1.0 / 3.0, 0.7, 1e-9, 123.456}) {
    for (std::size_t n = 1; n < 40; ++n) {
      const auto r = macrostate_parameter(vols_of(std::vector<double>(n, x)));
      EXPECT_EQ(r.p_m, x);
    }
  }
}

TEST(Macrostate, ScaleInvariance) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> log_c(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto series = fixtures::random_series(rng, 2 + trial % 40);
    const auto base = normalized_volatility(activity_series(series));
    const double c = std::pow(10.0, log_c(rng));
    auto scaled = series;
    for (auto& b : scaled.bars) (trial % 2 ? b.price : b.volume) *= c;
    const auto vols = normalized_volatility(activity_series(scaled));
    for (std::size_t i = 0; i < base.size(); ++i) {
      // Near-zero terms are compared on the scale of the ratio they came from.
      EXPECT_LE(std::fabs(vols[i].vol_n - base[i].vol_n), 1e-12 * (1.0 + std::fabs(base[i].vol_n)));
    }
    EXPECT_TRUE(fixtures::rel_close(macrostate_parameter(vols).p_m, macrostate_parameter(base).p_m, 1e-12));
  }
}

TEST(PeriodMacrostate, ConstantActivityPerYear) {
  auto s = make_series("X", ymd(2008, 12, 30), {2, 2, 2, 2}, {50, 50, 50, 50});
  s.bars[2].timestamp = ymd(2009, 1, 5);
  s.bars[3].timestamp = ymd(2009, 1, 6);
  const auto out = period_macrostate(s, Bucketing::Yearly);
  ASSERT_EQ(out.reports.size(), 2u);
  EXPECT_EQ(out.reports[0].p_m, 0.0);
  EXPECT_EQ(out.reports[1].p_m, 0.0);
  EXPECT_EQ(out.reports[0].bucket->year, 2008);
  EXPECT_EQ(out.reports[1].bucket->year, 2009);
}

TEST(PeriodMacrostate, SingleBarIsNotComputable) {
  const auto s = make_series("X", ymd(2008, 3, 1), {1}, {1});
  try {
    period_macrostate(s, Bucketing::Yearly);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("no computable periods"), std::string::npos);
  }
}

TEST(PeriodMacrostate, BucketsDoNotShareTransitions) {
  // 2008: [100, 110, 99], 2009: [50, 100]. The 99 -> 50 jump belongs to no bucket.
  auto s = from_activities("X", ymd(2008, 12, 29), {100, 110, 99, 50, 100});
  s.bars[3].timestamp = ymd(2009, 1, 2);
  s.bars[4].timestamp = ymd(2009, 1, 5);
  const auto out = period_macrostate(s, Bucketing::Yearly);
  ASSERT_EQ(out.reports.size(), 2u);
  EXPECT_NEAR(out.reports[0].p_m, 0.0, 1e-15);
  EXPECT_EQ(out.reports[0].n_transitions, 2u);
  EXPECT_EQ(out.reports[1].p_m, 1.0);
  EXPECT_EQ(out.reports[1].n_transitions, 1u);
}

TEST(PeriodMacrostate, MonthlyBucketsCountOmissions) {
  auto s = from_activities("X", ymd(2008, 1, 30), {1, 2, 4, 4});
  // Jan 30, Jan 31, Feb 1 (alone), then Mar 3.
  s.bars[3].timestamp = ymd(2008, 3, 3);
  const auto out = period_macrostate(s, Bucketing::Monthly);
  ASSERT_EQ(out.reports.size(), 1u);
  EXPECT_EQ(out.omitted_buckets, 2u);
  EXPECT_EQ(out.reports[0].bucket->month, 1u);
  EXPECT_EQ(out.reports[0].p_m, 1.0);
}

TEST(PeriodMacrostate, SingleYearEqualsWholeSeries) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = fixtures::random_series(rng, 2 + trial % 50);  // starts 2008-01-01, < 1 year
    const auto periods = period_macrostate(s, Bucketing::Yearly);
    ASSERT_EQ(periods.reports.size(), 1u);
    const auto whole = series_macrostate(s);
    EXPECT_EQ(periods.reports[0].p_m, whole.p_m);
    EXPECT_EQ(periods.reports[0].n_transitions, whole.n_transitions);
  }
}

TEST(Rolling, SlidingMeanExample) {
  const auto vols = vols_of({0.1, -0.1, 0.3});
  const auto r = rolling_macrostate(vols, 2, 1);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0].p_m, 0.0, 1e-15);
  EXPECT_NEAR(r[1].p_m, 0.1, 1e-15);
  EXPECT_EQ(r[0].timestamp, vols[1].timestamp);
  EXPECT_EQ(r[1].timestamp, vols[2].timestamp);
}

TEST(Rolling, MatchesSlidingMeanOracle) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = fixtures::random_series(rng, 3 + trial % 60);
    const auto vols = normalized_volatility(activity_series(s));
    std::vector<double> terms;
    for (const auto& v : vols) terms.push_back(v.vol_n);
    const std::size_t window = 1 + trial % vols.size();
    const std::size_t step = 1 + trial % 4;
    const auto got = rolling_macrostate(vols, window, step);
    const auto want = fixtures::sliding_mean(terms, window, step);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_TRUE(fixtures::rel_close(got[i].p_m, want[i], 1e-12)) << got[i].p_m << " vs " << want[i];
      if (i > 0) EXPECT_LT(got[i - 1].timestamp, got[i].timestamp);
    }
  }
}

TEST(Rolling, FullWindowEqualsGlobal) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = fixtures::random_series(rng, 2 + trial % 60);
    const auto global = series_macrostate(s);
    const auto r = rolling_macrostate(s, global.n_transitions, 1);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].p_m, global.p_m);
  }
}

TEST(Rolling, ConstantActivityIsZero) {
  const auto s = from_activities("X", ymd(2008, 1, 1), std::vector<double>(30, 500.0));
  for (const auto& p : rolling_macrostate(s, 7, 3)) EXPECT_EQ(p.p_m, 0.0);
}

TEST(Rolling, WindowTooLargeNamesBothCounts) {
  const auto s = from_activities("X", ymd(2008, 1, 1), {1, 2, 3, 4});
  try {
    rolling_macrostate(s, 5, 1);
    FAIL();
  } catch (const DataError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("5"), std::string::npos);
    EXPECT_NE(msg.find("3"), std::string::npos);
  }
  EXPECT_THROW(rolling_macrostate(s, 0, 1), std::invalid_argument);
  EXPECT_THROW(rolling_macrostate(s, 2, 0), std::invalid_argument);
}

TEST(Peaks, FlatSeriesHasNone) {
  EXPECT_TRUE(detect_peaks(rolling_of(std::vector<double>(10, 0.01))).empty());
  EXPECT_TRUE(detect_peaks(rolling_of(std::vector<double>(10, 0.0))).empty());
}

TEST(Peaks, SingleRunExample) {
  const auto rolling = rolling_of({0.01, 0.01, 0.50, 0.60, 0.01});
  const auto peaks = detect_peaks(rolling);
  ASSERT_EQ(peaks.size(), 1u);
  EXPECT_EQ(peaks[0].first_index, 2u);
  EXPECT_EQ(peaks[0].last_index, 3u);
  EXPECT_EQ(peaks[0].start, rolling[2].timestamp);
  EXPECT_EQ(peaks[0].end, rolling[3].timestamp);
  EXPECT_EQ(peaks[0].peak, 0.60);
}

TEST(Peaks, NegativeExcursionsCountByMagnitude) {
  const auto peaks = detect_peaks(rolling_of({0.01, -0.02, 0.01, -0.9, 0.01}));
  ASSERT_EQ(peaks.size(), 1u);
  EXPECT_EQ(peaks[0].peak, 0.9);
}

TEST(Peaks, ZeroBaselineFlagsAnyPositiveRun) {
  const auto peaks = detect_peaks(rolling_of({0, 0, 0, 0.001, 0, 0, 0.5, 0.5, 0}));
  ASSERT_EQ(peaks.size(), 2u);
  EXPECT_EQ(peaks[0].first_index, 3u);
  EXPECT_EQ(peaks[1].first_index, 6u);
  EXPECT_EQ(peaks[1].last_index, 7u);
}

TEST(Peaks, Errors) {
  EXPECT_THROW(detect_peaks(rolling_of({})), InsufficientObservations);
  EXPECT_THROW(detect_peaks(rolling_of({1.0}), 0.0), std::invalid_argument);
  EXPECT_THROW(detect_peaks(rolling_of({1.0}), -1.0), std::invalid_argument);
}

TEST(Peaks, RunsAreDisjointOrderedAndAboveThreshold) {
  std::mt19937_64 rng(77);
  std::lognormal_distribution<double> mag(0.0, 1.5);
  std::uniform_real_distribution<double> factor(0.5, 4.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> values;
    for (int i = 0; i < 5 + trial % 50; ++i) values.push_back(mag(rng) * (i % 3 == 0 ? -1.0 : 1.0));
    const double f = factor(rng);
    const auto rolling = rolling_of(values);
    std::vector<double> abs_values;
    for (double v : values) abs_values.push_back(std::fabs(v));
    std::sort(abs_values.begin(), abs_values.end());
    const std::size_t n = abs_values.size();
    const double med = n % 2 ? abs_values[n / 2] : (abs_values[n / 2 - 1] + abs_values[n / 2]) / 2.0;
    const auto peaks = detect_peaks(rolling, f);
    std::size_t flagged = 0;
    for (std::size_t k = 0; k < peaks.size(); ++k) {
      if (k > 0) EXPECT_GT(peaks[k].first_index, peaks[k - 1].last_index + 1);
      for (std::size_t i = peaks[k].first_index; i <= peaks[k].last_index; ++i) {
        EXPECT_GT(std::fabs(values[i]), f * med);
        ++flagged;
      }
    }
    std::size_t expected = 0;
    for (double v : values) expected += std::fabs(v) > f * med ? 1 : 0;
    EXPECT_EQ(flagged, expected);
  }
}
