#include <gtest/gtest.h>

#include "rotortree/decimal.hpp"
#include "rotortree/errors.hpp"
#include "rotortree/exact.hpp"

using namespace rotortree;

TEST(ExactAmount, Canonicalizes) {
  ExactAmount a(3, 3, 2);
  EXPECT_EQ(a.numerator(), 1);
  EXPECT_EQ(a.kpow(), 1u);
  EXPECT_EQ(a.to_string(), "1/3^1");

  ExactAmount z(3, 0, 7);
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.kpow(), 0u);
  EXPECT_EQ(z.to_string(), "0/3^0");

  ExactAmount whole(4, 64, 3);
  EXPECT_TRUE(whole.is_integer());
  EXPECT_EQ(whole.to_string(), "1/4^0");
}

TEST(ExactAmount, Arithmetic) {
  ExactAmount third(3, 1, 1);
  ExactAmount two_thirds(3, 2, 1);
  EXPECT_EQ((third + two_thirds).to_string(), "1/3^0");
  EXPECT_EQ((third - two_thirds).to_string(), "-1/3^1");
  EXPECT_EQ((ExactAmount(3, 4, 2) + ExactAmount(3, 80, 5)).to_string(), "188/3^5");
  EXPECT_EQ((third * BigInt(3)).to_string(), "1/3^0");
  EXPECT_EQ((-third).sign(), -1);
  EXPECT_EQ(ExactAmount(3, 1).scaled_down(2), ExactAmount(3, 1, 2));
  EXPECT_EQ(ExactAmount(3, 2, 1).numerator_at(3), 18);
}

TEST(ExactAmount, OrdersExactly) {
  EXPECT_LT(ExactAmount(3, 1, 1), ExactAmount(3, 1, 0));
  EXPECT_GT(ExactAmount(3, 188, 5), ExactAmount(3, 4, 2));
  EXPECT_LT(ExactAmount(3, -5, 2), ExactAmount::zero(3));
  EXPECT_EQ(ExactAmount(5, 25, 2), ExactAmount(5, 1));
}

TEST(ExactAmount, RejectsMixedDegrees) {
  ExactAmount a(3, 1, 1);
  ExactAmount b(4, 1, 1);
  EXPECT_THROW(a += b, Error);
  EXPECT_THROW((void)(a == b), Error);
}

TEST(ExactAmount, FractionStrings) {
  EXPECT_EQ(ExactAmount(3, 188, 5).to_fraction_string(), "188/243");
  EXPECT_EQ(ExactAmount(4, 90, 3).to_fraction_string(), "45/32");
  EXPECT_EQ(ExactAmount(3, 7).to_fraction_string(), "7");
}

TEST(ExactAmount, ParseRoundTrip) {
  for (const char* text : {"188/3^5", "-1/3^1", "0/3^0", "12345678901234567891/3^40"}) {
    EXPECT_EQ(ExactAmount::parse(text, 3).to_string(), text);
  }
  EXPECT_EQ(ExactAmount::parse("9", 3).to_string(), "9/3^0");
  EXPECT_EQ(ExactAmount::parse("9/3^2", 3).to_string(), "1/3^0");
  EXPECT_THROW(ExactAmount::parse("1/4^2", 3), Error);
  EXPECT_THROW(ExactAmount::parse("abc", 3), Error);
  EXPECT_THROW(ExactAmount::parse("1/3^", 3), Error);
}

TEST(Decimal, FormatsTwelveDigits) {
  EXPECT_EQ(format_decimal(to_decimal(ExactAmount(3, 1, 1))), "0.333333333333");
  EXPECT_EQ(format_decimal(to_decimal(ExactAmount(3, 188, 5))), "0.773662551440");
  EXPECT_EQ(format_decimal(Decimal(0)), "0.000000000000");
  EXPECT_DOUBLE_EQ(to_double(to_decimal(ExactAmount(4, 1, 2))), 0.0625);
}

TEST(BigIntHelpers, ParseAndBinomial) {
  EXPECT_EQ(parse_bigint("123456789012345678901234567890").get_str(), "123456789012345678901234567890");
  EXPECT_THROW(parse_bigint("12a"), Error);
  EXPECT_THROW(parse_bigint(""), Error);
  EXPECT_THROW(parse_bigint("1 2"), Error);
  EXPECT_THROW(parse_bigint("-"), Error);
  EXPECT_EQ(parse_bigint("-17"), -17);
  EXPECT_EQ(binomial(6, 4), 15);
  EXPECT_EQ(pow_ui(3, 5), 243);
}
