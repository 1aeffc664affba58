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

// Deterministic synthetic amounts for property tests and detection-power
// experiments.
//
// Random source: std::mt19937_64 seeded with the 64-bit seed directly. Its
// output sequence is fixed by the C++ standard. Uniform doubles in [0, 1)
// are formed from the top 53 bits of each draw (x >> 11) * 2^-53, so the
// same seed gives the same amounts on every conforming implementation.
// No <random> distribution objects are used, since their algorithms are
// implementation-defined.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "benford/dataset.h"

namespace benford {

enum class GeneratorKind {
  // 10^u with u uniform on [first_decade, first_decade + decades).
  kBenfordLogUniform,
  // First digit uniform on 1..9, uniform mantissa within the digit, uniform
  // decade.
  kUniformFirstDigit,
  // Log-uniform amounts rounded up to one significant figure
  // (e.g. 3.95e7 -> 4e7, 1.2e7 -> 2e7).
  kRoundedUp,
  // Log-uniform sample where each value is, with probability
  // tamper_fraction, replaced by a uniform-first-digit value of the same decade.
  kMixture,
};

std::string_view to_string(GeneratorKind kind);
// Accepts the snake_case names: benford, uniform_first_digit, rounded_up, mixture.
std::optional<GeneratorKind> parse_generator_kind(std::string_view name);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kBenfordLogUniform;
  std::uint64_t n = 1;
  int first_decade = 0;
  int decades = 1;
  double tamper_fraction = 0.0;
  std::uint64_t seed = 0;

  // Throws InvalidSpec.
  void validate() const;
};

// Pure function of the spec. Throws InvalidSpec.
std::vector<double> generate(const GeneratorSpec& spec);

// A synthetic panel: `entities` entities spread round-robin over `regions`
// regions (codes R01, R02, ...). Each entity draws one base amount from
// `spec` (spec.n is ignored) and reports base * 10^drift in every year, with
// drift uniform on [-max_drift, max_drift] per entity-year. Output is sorted
// by (entity_id, year).
struct PanelSpec {
  GeneratorSpec amounts;
  std::uint64_t entities = 100;
  unsigned regions = 1;
  YearWindow window;
  double max_drift = 0.02;
};

std::vector<FiscalRecord> generate_panel(const PanelSpec& spec);

}  // namespace benford
