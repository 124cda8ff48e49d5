#include "resfront/rational.hpp"

#include <gtest/gtest.h>

#include "resfront/error.hpp"

namespace resfront {
namespace {

TEST(RationalTest, Normalizes) {
  const Rational r(6, -8);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 4);
  EXPECT_EQ(Rational(0, 5), Rational(0));
}

TEST(RationalTest, ZeroDenominatorThrows) { EXPECT_THROW(Rational(1, 0), InputError); }

TEST(RationalTest, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(Rational::parse("7/10"), Rational(7, 10));
  EXPECT_EQ(Rational::parse("0.7"), Rational(7, 10));
  EXPECT_EQ(Rational::parse("1"), Rational(1));
  EXPECT_EQ(Rational::parse("2/4"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("0.25"), Rational(1, 4));
}

TEST(RationalTest, RejectsGarbage) {
  for (const char* bad : {"", "abc", "1/", "/2", "1/0", "0.", "1.2.3", "1/2/3"}) {
    EXPECT_THROW(Rational::parse(bad), InputError) << bad;
  }
}

TEST(RationalTest, OrdersExactly) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(2, 3), Rational(3, 5));
  EXPECT_EQ(Rational(1, 5) <=> Rational(2, 10), std::strong_ordering::equal);
  // Cross products beyond 64 bits.
  const std::int64_t big = 3'000'000'000'000LL;
  EXPECT_LT(Rational(big - 1, big), Rational(big, big + 1));
}

TEST(RationalTest, PrintsAsFraction) {
  EXPECT_EQ(Rational(7, 10).to_string(), "7/10");
  EXPECT_EQ(Rational(2).to_string(), "2/1");
}

}  // namespace
}  // namespace resfront
