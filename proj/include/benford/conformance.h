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

// Digit tabulation and the Pearson chi-square conformity test against the
// first-digit law, with fixed critical values at 8 degrees of freedom.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "benford/digits.h"

namespace benford {

inline constexpr int kDegreesOfFreedom = 8;

struct DigitFrequencyTable {
  std::array<std::uint64_t, kNumDigits> counts{};
  // Observations that carried a first digit.
  std::uint64_t n = 0;
  // Zero, negative or non-finite values skipped during tabulation.
  std::uint64_t excluded = 0;

  static DigitFrequencyTable from_counts(const std::array<std::uint64_t, kNumDigits>& counts);

  double frequency(Digit d) const;
  // counts / n; all zeros when n == 0.
  DigitArray frequencies() const;
};

// Tabulates leading digits. Nonpositive and non-finite values are counted in
// `excluded`. Throws EmptyInput if nothing remains.
DigitFrequencyTable count_first_digits(std::span<const double> values);

// Sum over d of (O_d - E_d)^2 / E_d with E_d = n P(d). Throws EmptyInput for n == 0.
double chi_square_statistic(const DigitFrequencyTable& table);

// Same statistic for real-valued observed counts; n is their sum.
double chi_square_statistic(std::span<const double, kNumDigits> observed);

enum class Classification { kConforming = 0, kMarginal = 1, kNonConforming = 2 };

std::string_view to_string(Classification c);

// Critical chi-square value at 8 degrees of freedom for a tabulated
// significance level (0.10, 0.05, 0.025, 0.01, 0.005, 0.001). Throws
// DomainError for anything else.
double critical_value(double alpha);

struct Thresholds {
  double chi2_strict = 15.507;
  double chi2_lenient = 13.362;
  double alpha_strict = 0.05;
  double alpha_lenient = 0.10;

  static Thresholds from_alpha(double alpha_strict, double alpha_lenient);
  // Throws DomainError unless 0 < chi2_lenient < chi2_strict.
  void validate() const;
};

// Boundaries belong to the less anomalous class:
// chi2 <= lenient is Conforming, lenient < chi2 <= strict is Marginal.
Classification classify(double chi2, const Thresholds& thresholds);

// P(d) -/+ multiplier * sigma with sigma = 1 / sqrt(n - 1).
struct ConfidenceBand {
  double sigma = 0.0;
  double multiplier = 1.0;
  DigitArray lower{};
  DigitArray upper{};

  double half_width() const { return multiplier * sigma; }
};

// Throws DomainError for n < 2 or a nonpositive multiplier.
ConfidenceBand confidence_band(std::uint64_t n, double multiplier = 1.0);

struct ConformityResult {
  double chi2 = 0.0;
  int df = kDegreesOfFreedom;
  Classification classification = Classification::kConforming;
  // Observed minus expected frequency.
  DigitArray per_digit_deviation{};
  // Absent for single-observation groups, where sigma is undefined.
  std::optional<ConfidenceBand> band;
};

ConformityResult assess(const DigitFrequencyTable& table, const Thresholds& thresholds,
                        double band_multiplier = 1.0);

// Arithmetic mean. Throws EmptyInput.
double mean_chi2(std::span<const double> values);

struct LabeledChi2 {
  std::string group;
  std::optional<int> year;
  double chi2 = 0.0;
};

struct HistogramBin {
  double lower = 0.0;
  double upper = 0.0;  // exclusive
  std::size_t count = 0;
};

struct HistogramOptions {
  double bin_width = 2.0;
  double origin = 0.0;
};

struct Chi2SetSummary {
  // Contiguous bins from the origin up to the one holding the maximum,
  // empty bins included.
  std::vector<HistogramBin> bins;
  // Values above the strict threshold, in input order.
  std::vector<LabeledChi2> outliers;
};

// Throws EmptyInput for an empty set, DomainError for a nonpositive bin
// width or a value below the origin.
Chi2SetSummary chi2_set_summary(std::span<const LabeledChi2> values,
                                const Thresholds& thresholds,
                                const HistogramOptions& options = {});

}  // namespace benford
