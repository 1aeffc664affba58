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

#pragma once

#include <cstddef>
#include <span>

namespace benford {

// Summary of a value set. Magnitudes are in the input's unit.
//
//   stddev_sample = sqrt(sum (x - mean)^2 / (n - 1))
//   stderr        = stddev_sample / sqrt(n)
//   rms           = sqrt(sum x^2 / n)
//   skewness      = m3 / m2^(3/2)          (population central moments)
//   kurtosis      = m4 / m2^2 - 3          (excess, population moments)
//
// Skewness and kurtosis are NaN when every value is equal.
struct DescriptiveStats {
  std::size_t n = 0;
  double min = 0.0;
  double max = 0.0;
  double sum = 0.0;
  double mean = 0.0;
  double median = 0.0;
  double rms = 0.0;
  double stddev_sample = 0.0;
  double stderr_mean = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;
};

// Throws DomainError for fewer than two values or non-finite input.
DescriptiveStats descriptive_stats(std::span<const double> values);

}  // namespace benford
