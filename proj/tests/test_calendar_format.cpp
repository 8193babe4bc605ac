#include <gtest/gtest.h>

#include <random>

#include "macrostate/calendar.hpp"
#include "macrostate/number_format.hpp"
#include "test_support.hpp"

using namespace macrostate;
using macrostate::fixtures::ymd;

TEST(Calendar, ParsesStrictIsoDates) {
  EXPECT_EQ(parse_iso_date("2008-01-03"), ymd(2008, 1, 3));
  EXPECT_EQ(parse_iso_date("2008-02-29"), ymd(2008, 2, 29));
  EXPECT_FALSE(parse_iso_date("2009-02-29"));
  EXPECT_FALSE(parse_iso_date("2008-13-01"));
  EXPECT_FALSE(parse_iso_date("2008-1-03"));
  EXPECT_FALSE(parse_iso_date("03/01/2008"));
  EXPECT_FALSE(parse_iso_date("2008-01-0x"));
  EXPECT_EQ(format_iso_date(ymd(2008, 3, 7)), "2008-03-07");
}

TEST(Calendar, WeekdayStepping) {
  // 2008-01-05 is a Saturday.
  EXPECT_TRUE(is_weekend(ymd(2008, 1, 5)));
  EXPECT_EQ(roll_to_weekday(ymd(2008, 1, 5)), ymd(2008, 1, 7));
  EXPECT_EQ(next_weekday(ymd(2008, 1, 4)), ymd(2008, 1, 7));
  EXPECT_EQ(next_weekday(ymd(2008, 1, 7)), ymd(2008, 1, 8));
}

TEST(NumberFormat, ShortestWithinTenDigits) {
  EXPECT_EQ(format_number(10.0), "10");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1234.5), "1234.5");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.3333333333");
  EXPECT_EQ(format_number(2.0 / 3.0), "0.6666666667");
  EXPECT_EQ(format_fixed(0.2, 6), "0.200000");
  EXPECT_EQ(format_fixed(-0.0, 6), "0.000000");
}

TEST(NumberFormat, RenderingIsAFixedPointAfterOneStep) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mant(1.0, 10.0);
  std::uniform_int_distribution<int> exp10(-8, 12);
  for (int i = 0; i < 2000; ++i) {
    const double x = mant(rng) * std::pow(10.0, exp10(rng)) * (i % 3 == 0 ? -1.0 : 1.0);
    const std::string once = format_number(x);
    const auto back = parse_number(once);
    ASSERT_TRUE(back) << once;
    EXPECT_EQ(format_number(*back), once);
    EXPECT_LE(std::fabs(*back - x), 1e-9 * std::fabs(x));
  }
}

TEST(NumberFormat, ParseRejectsGarbage) {
  EXPECT_FALSE(parse_number(""));
  EXPECT_FALSE(parse_number("1.0abc"));
  EXPECT_FALSE(parse_number("1,5"));
  EXPECT_FALSE(parse_number("nan"));
  EXPECT_FALSE(parse_number("inf"));
  EXPECT_EQ(parse_number("+2.5"), 2.5);
  EXPECT_EQ(parse_number("1e3"), 1000.0);
}
