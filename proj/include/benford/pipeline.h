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

// The audit proper: one conformity test per (region, year) cell, per-region
// summaries over the year window, regional totals and descriptive
// statistics of the regional totals.

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "benford/conformance.h"
#include "benford/dataset.h"
#include "benford/panel.h"
#include "benford/statistics.h"

namespace benford {

struct AnalysisOptions {
  YearWindow window;
  Thresholds thresholds;
  double band_multiplier = 1.0;
  HistogramOptions histogram;
  // 0 picks the hardware concurrency.
  unsigned workers = 0;
};

struct RegionYearReport {
  std::string region;
  int year = 0;
  DigitFrequencyTable freq_table;
  ConformityResult result;
};

// Throws MissingGroup when the cell is absent or empty, EmptyInput when it
// holds no positive amount.
RegionYearReport analyze_region_year(const Panel& panel, const std::string& region, int year,
                                     const Thresholds& thresholds, double band_multiplier = 1.0);

// Analyzes the union of several regions' members in one year under `label`.
RegionYearReport analyze_pooled(const Panel& panel, const std::string& label,
                                std::span<const std::string> regions, int year,
                                const Thresholds& thresholds, double band_multiplier = 1.0);

// Mean amount of each entity over the window years it reports in, ordered by
// entity id. Throws MissingGroup if the region lacks any window year.
std::vector<double> time_average_values(const Panel& panel, const std::string& region,
                                        const YearWindow& window);

struct YearChi2 {
  int year = 0;
  double chi2 = 0.0;
  Classification classification = Classification::kConforming;
};

struct RegionSummary {
  std::string region;
  // Distinct entities over the window.
  std::size_t entity_count = 0;
  std::vector<YearChi2> yearly;
  double mean_chi2 = 0.0;
  Classification classification_of_mean = Classification::kConforming;
  // Chi-square of the digit table of per-entity time averages.
  double chi2_of_time_averages = 0.0;
  Classification classification_of_time_averages = Classification::kConforming;
};

// Throws MissingGroup.
RegionSummary summarize_region(const Panel& panel, const std::string& region,
                               const YearWindow& window, const Thresholds& thresholds);

struct RegionalTotals {
  std::map<GroupKey, double> by_group;
  std::map<int, double> national;
  // Mean of a region's yearly totals over the window years it reports in.
  std::map<std::string, double> region_window_mean;
  double national_window_mean = 0.0;
  std::vector<std::string> warnings;
};

RegionalTotals regional_totals(const Panel& panel, const YearWindow& window);

// Flattens the per-cell chi-square values, labelled by region and year.
std::vector<LabeledChi2> collect_chi2_distribution(std::span<const RegionYearReport> reports);

struct AuditReport {
  AnalysisOptions options;
  // Sorted by region, then year.
  std::vector<RegionYearReport> cells;
  // Sorted by region.
  std::vector<RegionSummary> regions;
  RegionalTotals totals;
  // Statistics across regional totals, per year.
  std::map<int, DescriptiveStats> descriptive_by_year;
  // Statistics across regional window means.
  std::optional<DescriptiveStats> descriptive_window_mean;
  Chi2SetSummary yearly_chi2_summary;
  Chi2SetSummary mean_chi2_summary;
  // Nonpositive amounts skipped by digit analysis, over all cells.
  std::uint64_t excluded_values = 0;
  std::vector<std::string> warnings;

  bool any_nonconforming() const;
  const RegionYearReport* find_cell(const std::string& region, int year) const;
  const RegionSummary* find_region(const std::string& region) const;
};

// Runs every cell of the window. Cells are analyzed concurrently over the
// immutable panel; results are merged in (region, year) order, so the report
// does not depend on scheduling.
AuditReport run_audit(const Panel& panel, const AnalysisOptions& options);

}  // namespace benford
