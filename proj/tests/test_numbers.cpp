// Copyright 2026 The qsym Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "qsym/error.hpp"
#include "qsym/extended_real.hpp"
#include "qsym/probability.hpp"
#include "qsym/real.hpp"
#include "test_util.hpp"

namespace qsym {
namespace {

using testing::R;

TEST(ParseDecimal, ExactValues) {
  EXPECT_EQ(*parse_decimal("0.1"), Real(1, 10));
  EXPECT_EQ(*parse_decimal("-2.5"), Real(-5, 2));
  EXPECT_EQ(*parse_decimal("+3"), Real(3));
  EXPECT_EQ(*parse_decimal("18.4672e-6"), Real(Real(184672) / 10000000000));
  EXPECT_EQ(*parse_decimal("1E3"), Real(1000));
  EXPECT_EQ(*parse_decimal(".5"), Real(1, 2));
}

TEST(ParseDecimal, Rejects) {
  for (const char* s : {"", "abc", "1.2.3", "inf", "nan", "-", "1e", "0x10", "1,5"}) {
    EXPECT_FALSE(parse_decimal(s).has_value()) << s;
  }
}

TEST(FormatReal, ShortestWhenExact) {
  EXPECT_EQ(format_real(Real(1, 10)), "0.1");
  EXPECT_EQ(format_real(R("4.8327")), "4.8327");
  EXPECT_EQ(format_real(R("2.6724e-6")), "2.6724e-06");
  EXPECT_EQ(format_real(Real(1, 3)), "1/3");
  EXPECT_EQ(format_real(Real(-7)), "-7");
}

TEST(FormatReal, RoundTripsThroughParseReal) {
  for (const Real& q : {Real(1, 3), Real(-22, 7), Real(1, 1024), R("5.0050"), R("1e-300"),
                        Real(Real(mpz_class("123456789012345678901234567890")) / 7)}) {
    EXPECT_EQ(*parse_real(format_real(q)), q) << format_real(q);
  }
}

TEST(FormatReal, DisplayKeepsShortValuesExact) {
  EXPECT_EQ(format_real_display(R("0.25")), "0.25");
  const Real dyadic = real_from_double(std::pow(10.0, -4.7336));
  EXPECT_EQ(format_real_display(dyadic).size() <= 24, true);
  EXPECT_DOUBLE_EQ(std::stod(format_real_display(dyadic)), std::pow(10.0, -4.7336));
}

TEST(ToDouble, NearestDouble) {
  EXPECT_EQ(to_double(Real(1, 10)), 0.1);
  EXPECT_EQ(to_double(Real(1, 3)), 1.0 / 3.0);
  EXPECT_EQ(to_double(real_from_double(0.7)), 0.7);
}

TEST(ExtendedReal, TotalOrderWithInfinities) {
  const auto lo = ExtendedReal::neg_inf();
  const auto hi = ExtendedReal::pos_inf();
  const ExtendedReal a(Real(-1000000));
  const ExtendedReal b(Real(5));
  EXPECT_LT(lo, a);
  EXPECT_LT(a, b);
  EXPECT_LT(b, hi);
  EXPECT_EQ(lo, ExtendedReal::neg_inf());
  EXPECT_NE(lo, hi);
}

TEST(ExtendedReal, NegationSwapsInfinities) {
  EXPECT_EQ(-ExtendedReal::pos_inf(), ExtendedReal::neg_inf());
  EXPECT_EQ(-ExtendedReal::neg_inf(), ExtendedReal::pos_inf());
  EXPECT_EQ(-ExtendedReal(Real(3, 2)), ExtendedReal(Real(-3, 2)));
}

TEST(ExtendedReal, AdditionOnlyWhereDefined) {
  EXPECT_EQ(ExtendedReal(Real(1)) + ExtendedReal(Real(2)), ExtendedReal(Real(3)));
  EXPECT_EQ(ExtendedReal::pos_inf() + ExtendedReal(Real(2)), ExtendedReal::pos_inf());
  EXPECT_THROW(ExtendedReal::pos_inf() + ExtendedReal::neg_inf(), Error);
}

TEST(ExtendedReal, FormatAndParse) {
  EXPECT_EQ(format(ExtendedReal::neg_inf()), "-inf");
  EXPECT_EQ(format(ExtendedReal::pos_inf()), "+inf");
  EXPECT_EQ(*parse_extended("-inf"), ExtendedReal::neg_inf());
  EXPECT_EQ(*parse_extended("+inf"), ExtendedReal::pos_inf());
  EXPECT_EQ(*parse_extended("1/3"), ExtendedReal(Real(1, 3)));
  EXPECT_THROW(ExtendedReal::pos_inf().value(), Error);
  EXPECT_EQ(ExtendedReal::from_double(std::numeric_limits<double>::infinity()), ExtendedReal::pos_inf());
  EXPECT_EQ(ExtendedReal::neg_inf().to_double(), -std::numeric_limits<double>::infinity());
}

TEST(Probability, RangeEnforced) {
  EXPECT_NO_THROW(Probability(0));
  EXPECT_NO_THROW(Probability(1));
  EXPECT_THROW(Probability(Real(-1, 10)), Error);
  EXPECT_THROW(Probability(Real(11, 10)), Error);
  try {
    Probability(2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadLevel);
  }
}

TEST(Probability, ParseLevel) {
  EXPECT_EQ(parse_level("0.2")->value(), Real(1, 5));
  EXPECT_EQ(parse_level("20%")->value(), Real(1, 5));
  EXPECT_EQ(parse_level("100%")->value(), Real(1));
  EXPECT_EQ(parse_level("1/3")->value(), Real(1, 3));
  EXPECT_FALSE(parse_level("1.5"));
  EXPECT_FALSE(parse_level("-0.1"));
  EXPECT_FALSE(parse_level("abc"));
  EXPECT_FALSE(parse_level("150%"));
}

TEST(Probability, Complement) {
  EXPECT_EQ(Probability(1, 5).complement(), Probability(4, 5));
  EXPECT_TRUE(Probability::zero().complement().is_one());
}

TEST(ErrorCode, Names) {
  EXPECT_EQ(to_string(ErrorCode::kEmptyData), "EMPTY_DATA");
  EXPECT_EQ(to_string(ErrorCode::kContinuityMismatch), "CONTINUITY_MISMATCH");
  EXPECT_EQ(to_string(ErrorCode::kUnsupportedPushforward), "UNSUPPORTED_PUSHFORWARD");
}

}  // namespace
}  // namespace qsym
