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

#include "benford/statistics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "benford/errors.h"
#include "benford/summation.h"

namespace benford {

DescriptiveStats descriptive_stats(std::span<const double> values) {
  if (values.size() < 2) {
    throw DomainError(fmt::format("descriptive statistics need n >= 2, got {}", values.size()));
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw DomainError("descriptive statistics of a non-finite value");
    }
  }

  DescriptiveStats s;
  s.n = values.size();
  const double n = static_cast<double>(s.n);

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();
  const std::size_t mid = s.n / 2;
  s.median = (s.n % 2 == 1) ? sorted[mid] : sorted[mid - 1] + (sorted[mid] - sorted[mid - 1]) / 2.0;

  CompensatedSum sum;
  CompensatedSum sum_squares;
  for (double v : sorted) {
    sum.add(v);
    sum_squares.add(v * v);
  }
  s.sum = sum.value();
  s.mean = s.sum / n;
  s.rms = std::sqrt(sum_squares.value() / n);

  CompensatedSum m2;
  CompensatedSum m3;
  CompensatedSum m4;
  for (double v : sorted) {
    const double d = v - s.mean;
    const double d2 = d * d;
    m2.add(d2);
    m3.add(d2 * d);
    m4.add(d2 * d2);
  }
  const double central2 = m2.value() / n;
  const double central3 = m3.value() / n;
  const double central4 = m4.value() / n;

  s.stddev_sample = std::sqrt(m2.value() / (n - 1.0));
  s.stderr_mean = s.stddev_sample / std::sqrt(n);
  if (central2 > 0.0) {
    s.skewness = central3 / std::pow(central2, 1.5);
    s.kurtosis = central4 / (central2 * central2) - 3.0;
  } else {
    s.skewness = std::numeric_limits<double>::quiet_NaN();
    s.kurtosis = std::numeric_limits<double>::quiet_NaN();
  }
  return s;
}

}  // namespace benford
