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

#include "benford/synthesis.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "benford/digits.h"
#include "benford/errors.h"

namespace benford {

namespace {

// Keeps 10^(first_decade + decades) well inside the double range.
constexpr int kMaxAbsDecade = 300;

class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

  // [0, 1) from the top 53 bits.
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound).
  int below(int bound) {
    return std::min(bound - 1, static_cast<int>(next() * bound));
  }

 private:
  std::mt19937_64 engine_;
};

double pow10(int exponent) { return std::pow(10.0, exponent); }

double log_uniform(UniformSource& rng, const GeneratorSpec& spec) {
  const double u = spec.first_decade + spec.decades * rng.next();
  return std::pow(10.0, u);
}

double uniform_first_digit(UniformSource& rng, int decade) {
  const int digit = 1 + rng.below(9);
  const double mantissa = digit + rng.next();
  return mantissa * pow10(decade);
}

double round_up_one_figure(double x) {
  const int digit = first_significant_digit(x).value();
  int exponent = static_cast<int>(std::floor(std::log10(x)));
  // Keep the exponent consistent with the digit found above.
  if (x / pow10(exponent) >= 10.0) {
    ++exponent;
  } else if (x / pow10(exponent) < 1.0) {
    --exponent;
  }
  const double floor_value = digit * pow10(exponent);
  return floor_value >= x ? floor_value : (digit + 1) * pow10(exponent);
}

}  // namespace

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kBenfordLogUniform:
      return "benford";
    case GeneratorKind::kUniformFirstDigit:
      return "uniform_first_digit";
    case GeneratorKind::kRoundedUp:
      return "rounded_up";
    case GeneratorKind::kMixture:
      return "mixture";
  }
  return "unknown";
}

std::optional<GeneratorKind> parse_generator_kind(std::string_view name) {
  for (auto kind : {GeneratorKind::kBenfordLogUniform, GeneratorKind::kUniformFirstDigit,
                    GeneratorKind::kRoundedUp, GeneratorKind::kMixture}) {
    if (to_string(kind) == name) {
      return kind;
    }
  }
  return std::nullopt;
}

void GeneratorSpec::validate() const {
  if (n < 1) {
    throw InvalidSpec("sample size must be at least 1");
  }
  if (decades < 1) {
    throw InvalidSpec(fmt::format("decades must be at least 1, got {}", decades));
  }
  if (first_decade < -kMaxAbsDecade || first_decade + decades > kMaxAbsDecade) {
    throw InvalidSpec(fmt::format("decade range [{}, {}) exceeds +/-{}", first_decade,
                                  first_decade + decades, kMaxAbsDecade));
  }
  if (!(tamper_fraction >= 0.0 && tamper_fraction <= 1.0)) {
    throw InvalidSpec(fmt::format("tamper fraction {} outside [0, 1]", tamper_fraction));
  }
}

std::vector<double> generate(const GeneratorSpec& spec) {
  spec.validate();
  UniformSource rng(spec.seed);
  std::vector<double> out;
  out.reserve(spec.n);
  for (std::uint64_t i = 0; i < spec.n; ++i) {
    switch (spec.kind) {
      case GeneratorKind::kBenfordLogUniform:
        out.push_back(log_uniform(rng, spec));
        break;
      case GeneratorKind::kUniformFirstDigit:
        out.push_back(uniform_first_digit(rng, spec.first_decade + rng.below(spec.decades)));
        break;
      case GeneratorKind::kRoundedUp:
        out.push_back(round_up_one_figure(log_uniform(rng, spec)));
        break;
      case GeneratorKind::kMixture: {
        const double u = spec.first_decade + spec.decades * rng.next();
        const bool tamper = rng.next() < spec.tamper_fraction;
        out.push_back(tamper ? uniform_first_digit(rng, static_cast<int>(std::floor(u)))
                             : std::pow(10.0, u));
        break;
      }
    }
  }
  return out;
}

std::vector<FiscalRecord> generate_panel(const PanelSpec& spec) {
  if (spec.entities < 1) {
    throw InvalidSpec("a synthetic panel needs at least one entity");
  }
  if (spec.regions < 1) {
    throw InvalidSpec("a synthetic panel needs at least one region");
  }
  if (!(spec.max_drift >= 0.0) || !std::isfinite(spec.max_drift)) {
    throw InvalidSpec(fmt::format("drift {} must be a nonnegative number", spec.max_drift));
  }
  GeneratorSpec amounts = spec.amounts;
  amounts.n = spec.entities;
  const std::vector<double> bases = generate(amounts);

  UniformSource drift(spec.amounts.seed ^ 0x9E3779B97F4A7C15ULL);
  const int region_width = spec.regions > 99 ? static_cast<int>(std::to_string(spec.regions).size()) : 2;
  const int id_width = std::max<int>(6, static_cast<int>(std::to_string(spec.entities).size()));
  const std::vector<int> years = spec.window.years();

  std::vector<FiscalRecord> records;
  records.reserve(bases.size() * years.size());
  for (std::uint64_t i = 0; i < bases.size(); ++i) {
    const std::string id = fmt::format("SYN-{:0{}}", i + 1, id_width);
    const std::string name = fmt::format("Synthetic {}", i + 1);
    const std::string region = fmt::format("R{:0{}}", i % spec.regions + 1, region_width);
    for (int year : years) {
      const double factor = std::pow(10.0, spec.max_drift * (2.0 * drift.next() - 1.0));
      records.push_back({id, name, region, year, bases[i] * factor});
    }
  }
  return records;
}

}  // namespace benford
