// Copyright 2026 The stricteq Authors
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

#include <gtest/gtest.h>

#include "stricteq/matrix.hpp"
#include "stricteq/scalar.hpp"

namespace stricteq {
namespace {

TEST(Rational, ParseIntegerForms) {
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_EQ(Rational::parse("-12"), Rational(-12));
  EXPECT_EQ(Rational::parse("0"), Rational(0));
  EXPECT_EQ(Rational::parse("+3"), Rational(3));
}

TEST(Rational, ParseFractionForms) {
  EXPECT_EQ(Rational::parse("-3/4"), Rational(-3, 4));
  EXPECT_EQ(Rational::parse("6/4"), Rational(3, 2));  // canonicalized
  EXPECT_EQ(Rational::parse("0/9"), Rational(0));
}

TEST(Rational, ParseDecimalForms) {
  EXPECT_EQ(Rational::parse("2.5"), Rational(5, 2));
  EXPECT_EQ(Rational::parse("-0.125"), Rational(-1, 8));
  EXPECT_EQ(Rational::parse(".5"), Rational(1, 2));
  // Exactness where binary floating point is inexact.
  EXPECT_EQ(*Rational::parse("0.1") + *Rational::parse("0.2"),
            *Rational::parse("0.3"));
}

TEST(Rational, ParseRejectsMalformed) {
  EXPECT_FALSE(Rational::parse(""));
  EXPECT_FALSE(Rational::parse("abc"));
  EXPECT_FALSE(Rational::parse("1/0"));
  EXPECT_FALSE(Rational::parse("1.2.3"));
  EXPECT_FALSE(Rational::parse("1/"));
  EXPECT_FALSE(Rational::parse("--2"));
  EXPECT_FALSE(Rational::parse("2 "));
}

TEST(Rational, ArithmeticIsExact) {
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(1, 3) * Rational(3), Rational(1));
  EXPECT_EQ(Rational(7, 2) - Rational(7, 2), Rational(0));
  EXPECT_EQ(Rational(1) / Rational(-4), Rational(-1, 4));
  EXPECT_EQ(-Rational(2, 3), Rational(-2, 3));
}

TEST(Rational, ToStringCanonicalForms) {
  EXPECT_EQ(Rational(5).to_string(), "5");
  EXPECT_EQ(Rational(-3, 4).to_string(), "-3/4");
  EXPECT_EQ(Rational(43, 4).to_string(), "43/4");
  EXPECT_EQ(Rational(0).to_string(), "0");
}

TEST(Rational, ToStringRoundTrips) {
  const Rational samples[] = {Rational(0), Rational(7), Rational(-3, 4),
                              Rational(1000001, 7), Rational(-5, 2)};
  for (const auto& r : samples) {
    EXPECT_EQ(Rational::parse(r.to_string()), r);
  }
}

TEST(Rational, FloorCeilAbs) {
  EXPECT_EQ(Rational(-3, 2).floor(), Rational(-2));
  EXPECT_EQ(Rational(-3, 2).ceil(), Rational(-1));
  EXPECT_EQ(Rational(7, 2).floor(), Rational(3));
  EXPECT_EQ(Rational(7, 2).ceil(), Rational(4));
  EXPECT_EQ(Rational(4).floor(), Rational(4));
  EXPECT_EQ(Rational(-5, 3).abs(), Rational(5, 3));
  EXPECT_EQ(Rational(7, 2).floor_long(), 3L);
  EXPECT_EQ(Rational(-3, 2).floor_long(), -2L);
}

TEST(Rational, Ordering) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(0), Rational(-1, 100));
  EXPECT_LE(Rational(2), Rational(2));
}

TEST(ScalarTraits, RationalModeIsExact) {
  EXPECT_TRUE(scalar_traits<Rational>::exact);
  EXPECT_STREQ(scalar_traits<Rational>::mode_name(), "rational");
  const Tolerances<Rational> tol;
  EXPECT_EQ(tol.feasibility, Rational(0));
  EXPECT_EQ(tol.integrality, Rational(0));
  EXPECT_EQ(tol.complementarity, Rational(0));
}

TEST(ScalarTraits, FloatModeDefaults) {
  EXPECT_FALSE(scalar_traits<double>::exact);
  EXPECT_STREQ(scalar_traits<double>::mode_name(), "float");
  const Tolerances<double> tol;
  EXPECT_GT(tol.feasibility, 0.0);
  EXPECT_GT(tol.integrality, tol.feasibility);
}

TEST(ScalarTraits, DoubleParseAcceptsRationalForms) {
  EXPECT_EQ(scalar_traits<double>::parse("43/4"), 10.75);
  EXPECT_EQ(scalar_traits<double>::parse("-3/4"), -0.75);
  EXPECT_EQ(scalar_traits<double>::parse("2.5"), 2.5);
  EXPECT_FALSE(scalar_traits<double>::parse("1/0"));
  EXPECT_FALSE(scalar_traits<double>::parse("nan"));
  EXPECT_FALSE(scalar_traits<double>::parse("x"));
}

TEST(ScalarTraits, CompareWithTolerance) {
  EXPECT_EQ(compare(1.0, 1.0 + 1e-12, 1e-9), Ordering::equal);
  EXPECT_EQ(compare(1.0, 1.1, 1e-9), Ordering::less);
  EXPECT_EQ(compare(Rational(1, 3), Rational(1, 3), Rational(0)),
            Ordering::equal);
  EXPECT_EQ(compare(Rational(1, 3), Rational(0), Rational(0)),
            Ordering::greater);
  EXPECT_TRUE(approx_equal(2.0, 2.0 + 1e-10, 1e-9));
  EXPECT_FALSE(approx_equal(Rational(1), Rational(2), Rational(0)));
}

TEST(Matrix, ApplyAndTranspose) {
  const auto m = Mat<Rational>::from_rows(
      {{Rational(1), Rational(2)}, {Rational(-3), Rational(0)}});
  EXPECT_EQ(m.rows(), 2);
  EXPECT_EQ(m.cols(), 2);
  const std::vector<Rational> x = {Rational(1, 2), Rational(3)};
  const auto ax = m.apply(x);
  EXPECT_EQ(ax[0], Rational(13, 2));
  EXPECT_EQ(ax[1], Rational(-3, 2));
  const std::vector<Rational> y = {Rational(1), Rational(1)};
  const auto aty = m.apply_transposed(y);
  EXPECT_EQ(aty[0], Rational(-2));
  EXPECT_EQ(aty[1], Rational(2));
}

TEST(Matrix, RaggedRowsRejected) {
  EXPECT_THROW(Mat<Rational>::from_rows({{Rational(1)}, {}}),
               std::invalid_argument);
}

TEST(Matrix, Equality) {
  const auto a = Mat<Rational>::from_rows({{Rational(1)}});
  const auto b = Mat<Rational>::from_rows({{Rational(1)}});
  const auto c = Mat<Rational>::from_rows({{Rational(2)}});
  EXPECT_TRUE(a == b);
  EXPECT_FALSE(a == c);
}

}  // namespace
}  // namespace stricteq
