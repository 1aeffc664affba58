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

#include "benford/conformance.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "benford/errors.h"
#include "benford/summation.h"

namespace benford {

namespace {

struct CriticalValue {
  double alpha;
  double chi2;
};

// Upper-tail quantiles of the chi-square distribution with 8 degrees of freedom.
constexpr std::array<CriticalValue, 6> kCriticalValuesDf8 = {{
    {0.10, 13.362},
    {0.05, 15.507},
    {0.025, 17.535},
    {0.01, 20.090},
    {0.005, 21.955},
    {0.001, 26.124},
}};

}  // namespace

DigitFrequencyTable DigitFrequencyTable::from_counts(
    const std::array<std::uint64_t, kNumDigits>& counts) {
  DigitFrequencyTable table;
  table.counts = counts;
  for (std::uint64_t c : counts) {
    table.n += c;
  }
  return table;
}

double DigitFrequencyTable::frequency(Digit d) const {
  if (n == 0) {
    return 0.0;
  }
  return static_cast<double>(counts[d.index()]) / static_cast<double>(n);
}

DigitArray DigitFrequencyTable::frequencies() const {
  DigitArray f{};
  for (std::size_t i = 0; i < kNumDigits; ++i) {
    f[i] = frequency(Digit::from_index(i));
  }
  return f;
}

DigitFrequencyTable count_first_digits(std::span<const double> values) {
  DigitFrequencyTable table;
  for (double v : values) {
    if (!std::isfinite(v) || v <= 0.0) {
      ++table.excluded;
      continue;
    }
    ++table.counts[first_significant_digit(v).index()];
    ++table.n;
  }
  if (table.n == 0) {
    throw EmptyInput(fmt::format("no positive values among {} inputs", values.size()));
  }
  return table;
}

double chi_square_statistic(const DigitFrequencyTable& table) {
  if (table.n == 0) {
    throw EmptyInput("chi-square of an empty frequency table");
  }
  std::array<double, kNumDigits> observed{};
  for (std::size_t i = 0; i < kNumDigits; ++i) {
    observed[i] = static_cast<double>(table.counts[i]);
  }
  return chi_square_statistic(std::span<const double, kNumDigits>(observed));
}

double chi_square_statistic(std::span<const double, kNumDigits> observed) {
  double n = 0.0;
  for (double o : observed) {
    if (!std::isfinite(o) || o < 0.0) {
      throw DomainError(fmt::format("observed count {} is not a nonnegative number", o));
    }
    n += o;
  }
  if (n <= 0.0) {
    throw EmptyInput("chi-square of an empty frequency table");
  }
  const DigitArray& p = bl1_distribution();
  CompensatedSum chi2;
  for (std::size_t i = 0; i < kNumDigits; ++i) {
    const double expected = n * p[i];
    const double diff = observed[i] - expected;
    chi2.add(diff * diff / expected);
  }
  return chi2.value();
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::kConforming:
      return "conforming";
    case Classification::kMarginal:
      return "marginal";
    case Classification::kNonConforming:
      return "nonconforming";
  }
  return "unknown";
}

double critical_value(double alpha) {
  for (const auto& entry : kCriticalValuesDf8) {
    if (std::fabs(entry.alpha - alpha) < 1e-9) {
      return entry.chi2;
    }
  }
  throw DomainError(fmt::format(
      "no tabulated critical value for alpha = {} (use 0.10, 0.05, 0.025, 0.01, 0.005 or 0.001)",
      alpha));
}

Thresholds Thresholds::from_alpha(double alpha_strict, double alpha_lenient) {
  Thresholds t;
  t.alpha_strict = alpha_strict;
  t.alpha_lenient = alpha_lenient;
  t.chi2_strict = critical_value(alpha_strict);
  t.chi2_lenient = critical_value(alpha_lenient);
  t.validate();
  return t;
}

void Thresholds::validate() const {
  if (!(chi2_lenient > 0.0) || !(chi2_lenient < chi2_strict)) {
    throw DomainError(fmt::format(
        "lenient threshold {} must be positive and below the strict threshold {}",
        chi2_lenient, chi2_strict));
  }
}

Classification classify(double chi2, const Thresholds& thresholds) {
  if (chi2 <= thresholds.chi2_lenient) {
    return Classification::kConforming;
  }
  if (chi2 <= thresholds.chi2_strict) {
    return Classification::kMarginal;
  }
  return Classification::kNonConforming;
}

ConfidenceBand confidence_band(std::uint64_t n, double multiplier) {
  if (n < 2) {
    throw DomainError(fmt::format("confidence band needs n >= 2, got {}", n));
  }
  if (!(multiplier > 0.0) || !std::isfinite(multiplier)) {
    throw DomainError(fmt::format("band multiplier must be positive, got {}", multiplier));
  }
  ConfidenceBand band;
  band.sigma = 1.0 / std::sqrt(static_cast<double>(n - 1));
  band.multiplier = multiplier;
  const double half = band.half_width();
  const DigitArray& p = bl1_distribution();
  for (std::size_t i = 0; i < kNumDigits; ++i) {
    band.lower[i] = p[i] - half;
    band.upper[i] = p[i] + half;
  }
  return band;
}

ConformityResult assess(const DigitFrequencyTable& table, const Thresholds& thresholds,
                        double band_multiplier) {
  ConformityResult result;
  result.chi2 = chi_square_statistic(table);
  result.classification = classify(result.chi2, thresholds);
  const DigitArray observed = table.frequencies();
  const DigitArray& p = bl1_distribution();
  for (std::size_t i = 0; i < kNumDigits; ++i) {
    result.per_digit_deviation[i] = observed[i] - p[i];
  }
  if (table.n >= 2) {
    result.band = confidence_band(table.n, band_multiplier);
  }
  return result;
}

double mean_chi2(std::span<const double> values) {
  if (values.empty()) {
    throw EmptyInput("mean of an empty chi-square list");
  }
  return compensated_sum(values) / static_cast<double>(values.size());
}

Chi2SetSummary chi2_set_summary(std::span<const LabeledChi2> values,
                                const Thresholds& thresholds,
                                const HistogramOptions& options) {
  if (values.empty()) {
    throw EmptyInput("chi-square summary of an empty set");
  }
  if (!(options.bin_width > 0.0) || !std::isfinite(options.bin_width)) {
    throw DomainError(fmt::format("bin width must be positive, got {}", options.bin_width));
  }
  double max_value = options.origin;
  for (const auto& v : values) {
    if (!std::isfinite(v.chi2) || v.chi2 < options.origin) {
      throw DomainError(fmt::format("chi-square {} for {} lies below the histogram origin {}",
                                    v.chi2, v.group, options.origin));
    }
    max_value = std::max(max_value, v.chi2);
  }

  auto bin_of = [&](double x) {
    return static_cast<std::size_t>(std::floor((x - options.origin) / options.bin_width));
  };

  Chi2SetSummary summary;
  const std::size_t num_bins = bin_of(max_value) + 1;
  summary.bins.resize(num_bins);
  for (std::size_t i = 0; i < num_bins; ++i) {
    summary.bins[i].lower = options.origin + static_cast<double>(i) * options.bin_width;
    summary.bins[i].upper = options.origin + static_cast<double>(i + 1) * options.bin_width;
  }
  for (const auto& v : values) {
    ++summary.bins[bin_of(v.chi2)].count;
    if (v.chi2 > thresholds.chi2_strict) {
      summary.outliers.push_back(v);
    }
  }
  return summary;
}

}  // namespace benford
