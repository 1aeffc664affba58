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

#include <array>
#include <charconv>
#include <cmath>
#include <system_error>

#include <fmt/format.h>

#include "benford/errors.h"

namespace benford {

namespace {

// Powers of ten that are exactly representable as doubles.
constexpr std::array<double, 23> kExactPow10 = {
    1e0,  1e1,  1e2,  1e3,  1e4,  1e5,  1e6,  1e7,  1e8,  1e9,  1e10, 1e11,
    1e12, 1e13, 1e14, 1e15, 1e16, 1e17, 1e18, 1e19, 1e20, 1e21, 1e22};

constexpr int kMaxExactExponent = 22;

// Sign of x - m * 10^e for |e| <= 22. The fused multiply-add rounds once,
// and rounding never flips the sign of a nonzero result.
int compare_scaled(double x, int m, int e) {
  const double p = kExactPow10[static_cast<std::size_t>(e < 0 ? -e : e)];
  const double r = e >= 0 ? std::fma(-static_cast<double>(m), p, x)
                          : std::fma(x, p, -static_cast<double>(m));
  return (r > 0.0) - (r < 0.0);
}

// Leading digit of the exact decimal expansion. A double never needs more
// than 767 significant digits, so nothing is rounded.
int exact_decimal_digit(double x) {
  std::array<char, 800> buf;
  const auto result =
      std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::scientific, 767);
  if (result.ec != std::errc()) {
    throw DomainError(fmt::format("cannot expand {}", x));
  }
  return buf[0] - '0';
}

bool exact_range(int e) { return e >= -kMaxExactExponent && e + 1 <= kMaxExactExponent; }

}  // namespace

Digit::Digit(int value) : value_(value) {
  if (value < 1 || value > 9) {
    throw DomainError(fmt::format("digit {} outside 1..9", value));
  }
}

double bl1_probability(Digit d) {
  return std::log10(1.0 + 1.0 / static_cast<double>(d.value()));
}

const DigitArray& bl1_distribution() {
  static const DigitArray table = [] {
    DigitArray p{};
    for (std::size_t i = 0; i < kNumDigits; ++i) {
      p[i] = bl1_probability(Digit::from_index(i));
    }
    return p;
  }();
  return table;
}

Digit first_significant_digit(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError(fmt::format("no first significant digit for {}", x));
  }
  int e = static_cast<int>(std::floor(std::log10(x)));
  if (!exact_range(e)) {
    return Digit(exact_decimal_digit(x));
  }
  // log10 can land one decade off right next to a power of ten.
  if (compare_scaled(x, 1, e) < 0) {
    --e;
  } else if (compare_scaled(x, 1, e + 1) >= 0) {
    ++e;
  }
  if (!exact_range(e)) {
    return Digit(exact_decimal_digit(x));
  }
  const double p = kExactPow10[static_cast<std::size_t>(e < 0 ? -e : e)];
  int d = static_cast<int>(e >= 0 ? x / p : x * p);
  d = d < 1 ? 1 : (d > 9 ? 9 : d);
  while (d < 9 && compare_scaled(x, d + 1, e) >= 0) {
    ++d;
  }
  while (d > 1 && compare_scaled(x, d, e) < 0) {
    --d;
  }
  return Digit(d);
}

DigitArray expected_counts(std::uint64_t n) {
  if (n == 0) {
    throw DomainError("expected counts need a sample size of at least 1");
  }
  DigitArray expected = bl1_distribution();
  for (double& e : expected) {
    e *= static_cast<double>(n);
  }
  return expected;
}

}  // namespace benford
