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

// First-digit law primitives: the logarithmic first-digit distribution,
// leading-digit extraction and expected counts for a sample of size n.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace benford {

inline constexpr std::size_t kNumDigits = 9;

// A first significant digit, always in 1..9.
class Digit {
 public:
  // Throws DomainError outside 1..9.
  explicit Digit(int value);

  int value() const { return value_; }
  // Zero-based position for digit-indexed arrays.
  std::size_t index() const { return static_cast<std::size_t>(value_ - 1); }

  static Digit from_index(std::size_t index) { return Digit(static_cast<int>(index) + 1); }

  friend auto operator<=>(const Digit&, const Digit&) = default;

 private:
  int value_;
};

using DigitArray = std::array<double, kNumDigits>;

// log10(1 + 1/d).
double bl1_probability(Digit d);

// All nine probabilities, indexed by Digit::index().
const DigitArray& bl1_distribution();

// Leading nonzero decimal digit of x. Throws DomainError unless x is finite
// and strictly positive.
Digit first_significant_digit(double x);

// n * P(d) for every digit, unrounded. Throws DomainError for n == 0.
DigitArray expected_counts(std::uint64_t n);

}  // namespace benford
