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
#include <set>

#include <gtest/gtest.h>

#include "benford/conformance.h"
#include "benford/errors.h"
#include "fixed_seeds.h"

namespace benford {
namespace {

using testing::kFixedSeeds;

GeneratorSpec spec_of(GeneratorKind kind, std::uint64_t n, std::uint64_t seed) {
  GeneratorSpec s;
  s.kind = kind;
  s.n = n;
  s.first_decade = 2;
  s.decades = 6;
  s.seed = seed;
  return s;
}

TEST(Generate, FollowsDocumentedFormula) {
  // The first value is 10^(a + decades * u) with u built from the first
  // 64-bit draw of mt19937_64 seeded with the seed itself.
  for (std::uint64_t seed : {0ULL, 1ULL, 5489ULL, 0xFFFFFFFFFFFFFFFFULL}) {
    std::mt19937_64 engine(seed);
    const double u = static_cast<double>(engine() >> 11) * 0x1p-53;
    const auto v = generate(spec_of(GeneratorKind::kBenfordLogUniform, 1, seed));
    ASSERT_EQ(v.size(), 1u);
    EXPECT_DOUBLE_EQ(v[0], std::pow(10.0, 2.0 + 6.0 * u)) << seed;
  }
}

TEST(Generate, EngineKnownAnswer) {
  // The C++ standard fixes the 10000th output of a default-seeded engine.
  std::mt19937_64 engine(5489);
  engine.discard(9999);
  EXPECT_EQ(engine(), 9981545732273789042ULL);
}

TEST(Generate, Deterministic) {
  for (auto kind : {GeneratorKind::kBenfordLogUniform, GeneratorKind::kUniformFirstDigit,
                    GeneratorKind::kRoundedUp, GeneratorKind::kMixture}) {
    auto s = spec_of(kind, 500, 42);
    s.tamper_fraction = 0.3;
    EXPECT_EQ(generate(s), generate(s)) << to_string(kind);
    auto other = s;
    other.seed = 43;
    EXPECT_NE(generate(s), generate(other));
  }
  const auto one = generate(spec_of(GeneratorKind::kBenfordLogUniform, 1, 7));
  EXPECT_EQ(one, generate(spec_of(GeneratorKind::kBenfordLogUniform, 1, 7)));
  EXPECT_GT(one[0], 0.0);
}

TEST(Generate, ValuesStayInsideTheDecades) {
  for (auto kind : {GeneratorKind::kBenfordLogUniform, GeneratorKind::kUniformFirstDigit,
                    GeneratorKind::kMixture}) {
    auto s = spec_of(kind, 20'000, 3);
    s.tamper_fraction = 0.5;
    for (double x : generate(s)) {
      ASSERT_GE(x, 1e2);
      ASSERT_LT(x, 1e8);
    }
  }
}

TEST(Generate, BenfordDigitOneFrequency) {
  const auto v = generate(spec_of(GeneratorKind::kBenfordLogUniform, 100'000, kFixedSeeds[0]));
  const auto t = count_first_digits(v);
  EXPECT_NEAR(t.frequency(Digit(1)), 0.301, 0.005);
}

TEST(Generate, UniformFirstDigitFrequencies) {
  const auto v = generate(spec_of(GeneratorKind::kUniformFirstDigit, 9'000, kFixedSeeds[1]));
  const auto f = count_first_digits(v).frequencies();
  for (double x : f) {
    EXPECT_NEAR(x, 1.0 / 9.0, 0.01);
  }
}

TEST(Generate, RoundedUpHasOneSignificantFigure) {
  const auto v = generate(spec_of(GeneratorKind::kRoundedUp, 5'000, 9));
  for (double x : v) {
    const double scale = std::pow(10.0, std::floor(std::log10(x)));
    const double lead = x / scale;
    ASSERT_NEAR(lead, std::round(lead), 1e-9) << x;
  }
  // Rounding up moves mass from 1 towards 2..9 and 1-decades, so the
  // sample is far from the law.
  EXPECT_GT(chi_square_statistic(count_first_digits(v)), 15.507);
}

TEST(Generate, MixtureInterpolates) {
  auto clean = spec_of(GeneratorKind::kMixture, 50'000, 10);
  clean.tamper_fraction = 0.0;
  auto full = clean;
  full.tamper_fraction = 1.0;
  auto half = clean;
  half.tamper_fraction = 0.5;
  const double f0 = count_first_digits(generate(clean)).frequency(Digit(1));
  const double f1 = count_first_digits(generate(full)).frequency(Digit(1));
  const double fh = count_first_digits(generate(half)).frequency(Digit(1));
  EXPECT_NEAR(f0, 0.301, 0.01);
  EXPECT_NEAR(f1, 1.0 / 9.0, 0.01);
  EXPECT_NEAR(fh, (0.30103 + 1.0 / 9.0) / 2.0, 0.01);
}

TEST(Generate, InvalidSpecs) {
  auto s = spec_of(GeneratorKind::kBenfordLogUniform, 0, 1);
  EXPECT_THROW(generate(s), InvalidSpec);
  s.n = 1;
  s.decades = 0;
  EXPECT_THROW(generate(s), InvalidSpec);
  s.decades = 1;
  s.tamper_fraction = 1.5;
  EXPECT_THROW(generate(s), InvalidSpec);
  s.tamper_fraction = -0.1;
  EXPECT_THROW(generate(s), InvalidSpec);
  EXPECT_EQ(parse_generator_kind("uniform_first_digit"), GeneratorKind::kUniformFirstDigit);
  EXPECT_FALSE(parse_generator_kind("gaussian").has_value());
}

// Pass counts over the frozen seed list, recorded from the first run.
TEST(DetectionPower, FrozenPassCounts) {
  const Thresholds t;
  int benford_conforming = 0;
  int uniform_flagged = 0;
  for (std::uint64_t seed : kFixedSeeds) {
    GeneratorSpec b = spec_of(GeneratorKind::kBenfordLogUniform, 1546, seed);
    if (classify(chi_square_statistic(count_first_digits(generate(b))), t) ==
        Classification::kConforming) {
      ++benford_conforming;
    }
    GeneratorSpec u = spec_of(GeneratorKind::kUniformFirstDigit, 300, seed);
    if (classify(chi_square_statistic(count_first_digits(generate(u))), t) ==
        Classification::kNonConforming) {
      ++uniform_flagged;
    }
  }
  EXPECT_EQ(benford_conforming, 88);
  EXPECT_EQ(uniform_flagged, 100);
}

TEST(DetectionPower, LargeBenfordSamplesPassStrictCut) {
  int below = 0;
  for (std::uint64_t seed : kFixedSeeds) {
    const auto v = generate(spec_of(GeneratorKind::kBenfordLogUniform, 100'000, seed));
    below += chi_square_statistic(count_first_digits(v)) < 15.507 ? 1 : 0;
  }
  EXPECT_GE(below, 90);
}

TEST(GeneratePanel, Layout) {
  PanelSpec spec;
  spec.amounts = spec_of(GeneratorKind::kBenfordLogUniform, 1, 12);
  spec.entities = 25;
  spec.regions = 3;
  spec.window = {2007, 2009};
  const auto records = generate_panel(spec);
  ASSERT_EQ(records.size(), 75u);
  EXPECT_EQ(records.front().entity_id, "SYN-000001");
  std::set<std::string> regions;
  for (const auto& r : records) {
    regions.insert(r.region_code);
    EXPECT_GT(r.amount, 0.0);
  }
  EXPECT_EQ(regions, (std::set<std::string>{"R01", "R02", "R03"}));
  EXPECT_TRUE(std::is_sorted(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.entity_id, a.year) < std::tie(b.entity_id, b.year);
  }));
  EXPECT_EQ(generate_panel(spec), records);
  // Drift stays within the configured band.
  for (std::size_t i = 0; i < records.size(); i += 3) {
    for (std::size_t k = 1; k < 3; ++k) {
      EXPECT_LE(std::abs(std::log10(records[i + k].amount / records[i].amount)), 0.04 + 1e-12);
    }
  }
}

}  // namespace
}  // namespace benford
