// Copyright 2026 The Benford Audit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "benford/digits.h"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "benford/errors.h"
#include "reference_values.h"

namespace benford {
namespace {

TEST(Bl1Probability, MatchesPrintedTableToThreeDecimals) {
  for (int d = 1; d <= 9; ++d) {
    const double p = bl1_probability(Digit(d));
    EXPECT_NEAR(p, testing::kPrintedBl1[d - 1], 0.0005) << "digit " << d;
  }
}

TEST(Bl1Probability, SumsToOne) {
  const auto& dist = bl1_distribution();
  EXPECT_NEAR(std::accumulate(dist.begin(), dist.end(), 0.0), 1.0, 1e-12);
}

TEST(Bl1Probability, StrictlyDecreasingAndPositive) {
  for (int d = 1; d <= 8; ++d) {
    EXPECT_GT(bl1_probability(Digit(d)), bl1_probability(Digit(d + 1)));
  }
  EXPECT_GT(bl1_probability(Digit(9)), 0.0);
}

TEST(Bl1Probability, TableAgreesWithFunction) {
  for (std::size_t i = 0; i < kNumDigits; ++i) {
    EXPECT_EQ(bl1_distribution()[i], bl1_probability(Digit::from_index(i)));
    EXPECT_EQ(bl1_distribution()[i], std::log10(1.0 + 1.0 / static_cast<double>(i + 1)));
  }
}

TEST(Digit, RejectsValuesOutsideOneToNine) {
  EXPECT_THROW(Digit(0), DomainError);
  EXPECT_THROW(Digit(10), DomainError);
  EXPECT_THROW(Digit(-3), DomainError);
  EXPECT_EQ(Digit(7).index(), 6u);
  EXPECT_EQ(Digit::from_index(0).value(), 1);
}

TEST(FirstSignificantDigit, Examples) {
  EXPECT_EQ(first_significant_digit(14.457e10).value(), 1);
  EXPECT_EQ(first_significant_digit(0.4580e10).value(), 4);
  EXPECT_EQ(first_significant_digit(1.0).value(), 1);
  EXPECT_EQ(first_significant_digit(0.00099).value(), 9);
  EXPECT_EQ(first_significant_digit(9.999999999999).value(), 9);
  EXPECT_EQ(first_significant_digit(10.0).value(), 1);
  EXPECT_EQ(first_significant_digit(1e-300).value(), 1);
  EXPECT_EQ(first_significant_digit(std::numeric_limits<double>::max()).value(), 1);
  EXPECT_EQ(first_significant_digit(std::numeric_limits<double>::denorm_min()).value(), 4);
}

// Leading digit of the exact binary value, rendered with enough digits that
// rounding cannot carry into the first one.
int exact_digit(double x) {
  char buf[128];
  const auto [end, ec] =
      std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific, 40);
  EXPECT_EQ(ec, std::errc());
  return buf[0] - '0';
}

TEST(FirstSignificantDigit, DecadeBoundaries) {
  for (int e = -300; e <= 300; ++e) {
    const double p = std::stod("1e" + std::to_string(e));
    for (double x : {p, std::nextafter(p, 0.0), std::nextafter(p, 2.0 * p),
                     std::nextafter(std::nextafter(p, 0.0), 0.0)}) {
      ASSERT_EQ(first_significant_digit(x).value(), exact_digit(x)) << x;
    }
  }
  EXPECT_EQ(first_significant_digit(0.09999999999).value(), 9);
}

TEST(FirstSignificantDigit, RejectsNonPositiveAndNonFinite) {
  EXPECT_THROW(first_significant_digit(0.0), DomainError);
  EXPECT_THROW(first_significant_digit(-0.0), DomainError);
  EXPECT_THROW(first_significant_digit(-5.0), DomainError);
  EXPECT_THROW(first_significant_digit(std::numeric_limits<double>::infinity()), DomainError);
  EXPECT_THROW(first_significant_digit(std::numeric_limits<double>::quiet_NaN()), DomainError);
}

// The leading nonzero character of the shortest round-trip rendering.
int digit_from_text(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific);
  EXPECT_EQ(ec, std::errc());
  for (char* p = buf; p != end; ++p) {
    if (*p >= '1' && *p <= '9') {
      return *p - '0';
    }
  }
  return 0;
}

TEST(FirstSignificantDigit, AgreesWithDecimalRendering) {
  std::mt19937_64 rng(0x5EED0001);
  std::uniform_int_distribution<std::int64_t> cents(1, 99'999'999'999'999);
  std::uniform_real_distribution<double> exponent(-30.0, 30.0);
  for (int i = 0; i < 200'000; ++i) {
    const double amount = static_cast<double>(cents(rng)) / 100.0;
    ASSERT_EQ(first_significant_digit(amount).value(), digit_from_text(amount)) << amount;
    const double wide = std::pow(10.0, exponent(rng));
    ASSERT_EQ(first_significant_digit(wide).value(), digit_from_text(wide)) << wide;
  }
}

TEST(FirstSignificantDigit, ScaleInvariant) {
  std::mt19937_64 rng(0x5EED0002);
  std::uniform_int_distribution<std::int64_t> cents(1, 9'999'999'999);
  for (int i = 0; i < 20'000; ++i) {
    const double x = static_cast<double>(cents(rng)) / 100.0;
    const int d = first_significant_digit(x).value();
    for (int k = -12; k <= 12; ++k) {
      // Scaling by an exact power of ten through the decimal rendering keeps
      // the digit string, so both sides refer to the same decimal value.
      const double scaled = std::stod(std::to_string(static_cast<long long>(x * 100)) + "e" +
                                      std::to_string(k - 2));
      ASSERT_EQ(first_significant_digit(scaled).value(), d) << x << " k=" << k;
    }
  }
}

TEST(ExpectedCounts, Examples) {
  const auto e100 = expected_counts(100);
  EXPECT_NEAR(e100[0], 30.103, 5e-4);
  EXPECT_NEAR(e100[1], 17.609, 5e-4);
  EXPECT_NEAR(e100[8], 4.576, 5e-4);
  EXPECT_EQ(expected_counts(1), bl1_distribution());
  EXPECT_NEAR(expected_counts(1546)[0], 1546.0 * std::log10(2.0), 1e-9);
  EXPECT_NEAR(expected_counts(1546)[0], 465.39, 0.01);
  EXPECT_THROW(expected_counts(0), DomainError);
}

TEST(ExpectedCounts, SumToN) {
  for (std::uint64_t n : {1ULL, 7ULL, 1546ULL, 1'000'000'007ULL}) {
    const auto e = expected_counts(n);
    const double sum = std::accumulate(e.begin(), e.end(), 0.0);
    EXPECT_NEAR(sum, static_cast<double>(n), 1e-9 * static_cast<double>(n));
  }
}

}  // namespace
}  // namespace benford
