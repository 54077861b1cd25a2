// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "clinch/rational.hpp"

#include <gtest/gtest.h>

#include "clinch/errors.hpp"

namespace clinch {
namespace {

TEST(Rational, CanonicalizesOnConstruction) {
  EXPECT_EQ(Rational(6, 8).str(), "3/4");
  EXPECT_EQ(Rational(-6, 4).str(), "-3/2");
  EXPECT_EQ(Rational(3, -4).str(), "-3/4");
  EXPECT_EQ(Rational(0, 7).str(), "0");
  EXPECT_EQ(Rational(42).str(), "42");
}

TEST(Rational, ParsesIntegersAndFractions) {
  EXPECT_EQ(Rational::from_string("3"), Rational(3));
  EXPECT_EQ(Rational::from_string("-3"), Rational(-3));
  EXPECT_EQ(Rational::from_string("3/4"), Rational(3, 4));
  EXPECT_EQ(Rational::from_string("-10/4"), Rational(-5, 2));
  EXPECT_EQ(Rational::from_string("0"), Rational(0));
  EXPECT_EQ(Rational::from_string("007/014"), Rational(1, 2));
  EXPECT_EQ(Rational::from_string("+2/6"), Rational(1, 3));
}

TEST(Rational, RejectsEverythingElse) {
  for (const char* bad : {"", "1.5", "1/0", "a", "1/-2", "/3", "1/",
                          "1e3", " 1", "1 ", "2/3/4", "-"}) {
    EXPECT_THROW(Rational::from_string(bad), Error) << bad;
  }
}

TEST(Rational, ArithmeticIsExact) {
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(1, 3) - Rational(1, 2), Rational(-1, 6));
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  EXPECT_EQ(Rational(1, 3) / Rational(2, 9), Rational(3, 2));
  Rational r(5, 7);
  r += Rational(2, 7);
  EXPECT_EQ(r, Rational(1));
  r -= Rational(3, 2);
  EXPECT_EQ(r, Rational(-1, 2));
  EXPECT_EQ(-r, Rational(1, 2));
}

TEST(Rational, ComparesByValue) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
  EXPECT_LE(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(min(Rational(5, 3), Rational(3, 2)), Rational(3, 2));
  EXPECT_EQ(max(Rational(-1), Rational(-2)), Rational(-1));
}

TEST(Rational, FloorRoundsTowardMinusInfinity) {
  EXPECT_EQ(Rational(7, 3).floor(), Rational(2));
  EXPECT_EQ(Rational(-7, 3).floor(), Rational(-3));
  EXPECT_EQ(Rational(3).floor(), Rational(3));
  EXPECT_EQ(Rational(0).floor(), Rational(0));
}

TEST(Rational, Predicates) {
  EXPECT_TRUE(Rational(4, 2).is_integer());
  EXPECT_FALSE(Rational(1, 2).is_integer());
  EXPECT_TRUE(Rational(0).is_zero());
  EXPECT_TRUE(Rational(-1, 5).is_negative());
  EXPECT_TRUE(Rational(1, 5).is_positive());
}

TEST(Rational, IntegerExtraction) {
  EXPECT_EQ(Rational(10, 2).to_int64(), 5);
  EXPECT_EQ(Rational(-9, 3).to_int64(), -3);
  EXPECT_THROW(Rational(1, 2).to_int64(), Error);
}

TEST(Rational, DecimalRenderingIsDisplayOnly) {
  EXPECT_EQ(Rational(1, 2).decimal(20), "0.5");
  EXPECT_EQ(Rational(3).decimal(20), "3");
  EXPECT_EQ(Rational(1, 3).decimal(5), "0.33333");
  // The canonical string stays exact regardless of rendering.
  EXPECT_EQ(Rational(1, 3).str(), "1/3");
}

}  // namespace
}  // namespace clinch
