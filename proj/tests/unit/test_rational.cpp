#include <gtest/gtest.h>

#include "causticlab/error.hpp"
#include "causticlab/rational.hpp"

using causticlab::Error;
using causticlab::ErrorCode;
using causticlab::Rational;

TEST(Rational, ReducesAndNormalizesSign) {
  const Rational r(6, -8);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 4);
  EXPECT_EQ(r.to_string(), "-3/4");
}

TEST(Rational, ParsesIntegersAndFractions) {
  EXPECT_EQ(Rational::parse("4/5"), Rational(4, 5));
  EXPECT_EQ(Rational::parse(" -2/10 "), Rational(-1, 5));
  EXPECT_EQ(Rational::parse("7"), Rational(7));
}

TEST(Rational, ArithmeticMatchesHandValues) {
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(3, 5) - Rational(2, 5), Rational(1, 5));
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  EXPECT_EQ(Rational(1, 2) / Rational(1, 4), Rational(2));
  EXPECT_DOUBLE_EQ(Rational(3, 8).to_double(), 0.375);
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "1/", "/2", "a/b", "1/0", "1.5"}) {
    try {
      Rational::parse(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << bad;
    }
  }
}
