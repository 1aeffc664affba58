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

#include "benford/pipeline.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "benford/errors.h"
#include "benford/summation.h"

namespace benford {

namespace {

RegionYearReport analyze_values(std::string label, int year, std::span<const double> values,
                                const Thresholds& thresholds, double band_multiplier) {
  RegionYearReport report;
  report.region = std::move(label);
  report.year = year;
  report.freq_table = count_first_digits(values);
  report.result = assess(report.freq_table, thresholds, band_multiplier);
  return report;
}

// Regions with at least one group inside the window.
std::vector<std::string> regions_in_window(const Panel& panel, const YearWindow& window) {
  std::set<std::string> out;
  for (const auto& [key, members] : panel.groups) {
    if (window.contains(key.year) && !members.empty()) {
      out.insert(key.region);
    }
  }
  return {out.begin(), out.end()};
}

std::size_t distinct_entities(const Panel& panel, const std::string& region,
                              const YearWindow& window) {
  std::set<std::string> ids;
  for (int year : window.years()) {
    for (const auto& m : panel.at(region, year)) {
      ids.insert(m.entity_id);
    }
  }
  return ids.size();
}

RegionSummary finish_summary(const Panel& panel, const std::string& region,
                             std::vector<YearChi2> yearly, const YearWindow& window,
                             const Thresholds& thresholds) {
  RegionSummary summary;
  summary.region = region;
  summary.entity_count = distinct_entities(panel, region, window);
  summary.yearly = std::move(yearly);

  std::vector<double> values;
  for (const auto& y : summary.yearly) {
    values.push_back(y.chi2);
  }
  summary.mean_chi2 = mean_chi2(values);
  summary.classification_of_mean = classify(summary.mean_chi2, thresholds);

  const std::vector<double> averages = time_average_values(panel, region, window);
  summary.chi2_of_time_averages = chi_square_statistic(count_first_digits(averages));
  summary.classification_of_time_averages = classify(summary.chi2_of_time_averages, thresholds);
  return summary;
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        fn(i);
      }
    });
  }
}

}  // namespace

RegionYearReport analyze_region_year(const Panel& panel, const std::string& region, int year,
                                     const Thresholds& thresholds, double band_multiplier) {
  const std::vector<double> values = amounts_of(panel.at(region, year));
  return analyze_values(region, year, values, thresholds, band_multiplier);
}

RegionYearReport analyze_pooled(const Panel& panel, const std::string& label,
                                std::span<const std::string> regions, int year,
                                const Thresholds& thresholds, double band_multiplier) {
  std::vector<double> values;
  for (const auto& region : regions) {
    if (const auto* members = panel.find(region, year)) {
      for (const auto& m : *members) {
        values.push_back(m.amount);
      }
    }
  }
  if (values.empty()) {
    throw MissingGroup(label, year);
  }
  return analyze_values(label, year, values, thresholds, band_multiplier);
}

std::vector<double> time_average_values(const Panel& panel, const std::string& region,
                                        const YearWindow& window) {
  std::map<std::string, std::pair<CompensatedSum, int>> per_entity;
  for (int year : window.years()) {
    for (const auto& m : panel.at(region, year)) {
      auto& [sum, count] = per_entity[m.entity_id];
      sum.add(m.amount);
      ++count;
    }
  }
  std::vector<double> out;
  out.reserve(per_entity.size());
  for (const auto& [id, acc] : per_entity) {
    out.push_back(acc.first.value() / acc.second);
  }
  return out;
}

RegionSummary summarize_region(const Panel& panel, const std::string& region,
                               const YearWindow& window, const Thresholds& thresholds) {
  std::vector<YearChi2> yearly;
  for (int year : window.years()) {
    const RegionYearReport cell = analyze_region_year(panel, region, year, thresholds);
    yearly.push_back({year, cell.result.chi2, cell.result.classification});
  }
  return finish_summary(panel, region, std::move(yearly), window, thresholds);
}

RegionalTotals regional_totals(const Panel& panel, const YearWindow& window) {
  RegionalTotals totals;
  std::map<int, CompensatedSum> national;
  for (const auto& [key, members] : panel.groups) {
    if (!window.contains(key.year)) {
      continue;
    }
    CompensatedSum sum;
    for (const auto& m : members) {
      sum.add(m.amount);
    }
    totals.by_group[key] = sum.value();
    // The national total sums the entities directly rather than the
    // already-rounded regional totals.
    for (const auto& m : members) {
      national[key.year].add(m.amount);
    }
  }
  for (const auto& [year, sum] : national) {
    totals.national[year] = sum.value();
  }

  for (const auto& region : regions_in_window(panel, window)) {
    CompensatedSum sum;
    int years = 0;
    std::vector<int> missing;
    for (int year : window.years()) {
      const auto it = totals.by_group.find(GroupKey{region, year});
      if (it == totals.by_group.end()) {
        missing.push_back(year);
        continue;
      }
      sum.add(it->second);
      ++years;
    }
    if (!missing.empty()) {
      totals.warnings.push_back(fmt::format("region '{}' has no data for {}; its window mean "
                                            "covers {} of {} years",
                                            region, fmt::join(missing, ", "), years,
                                            window.size()));
    }
    totals.region_window_mean[region] = sum.value() / years;
  }

  CompensatedSum national_sum;
  for (const auto& [year, total] : totals.national) {
    national_sum.add(total);
  }
  if (!totals.national.empty()) {
    totals.national_window_mean =
        national_sum.value() / static_cast<double>(totals.national.size());
  }
  return totals;
}

std::vector<LabeledChi2> collect_chi2_distribution(std::span<const RegionYearReport> reports) {
  std::vector<LabeledChi2> out;
  out.reserve(reports.size());
  for (const auto& r : reports) {
    out.push_back({r.region, r.year, r.result.chi2});
  }
  return out;
}

bool AuditReport::any_nonconforming() const {
  return std::any_of(cells.begin(), cells.end(), [](const RegionYearReport& r) {
    return r.result.classification == Classification::kNonConforming;
  });
}

const RegionYearReport* AuditReport::find_cell(const std::string& region, int year) const {
  for (const auto& c : cells) {
    if (c.region == region && c.year == year) {
      return &c;
    }
  }
  return nullptr;
}

const RegionSummary* AuditReport::find_region(const std::string& region) const {
  for (const auto& r : regions) {
    if (r.region == region) {
      return &r;
    }
  }
  return nullptr;
}

AuditReport run_audit(const Panel& panel, const AnalysisOptions& options) {
  options.thresholds.validate();
  AuditReport report;
  report.options = options;
  const YearWindow& window = options.window;
  const std::vector<std::string> regions = regions_in_window(panel, window);
  if (regions.empty()) {
    throw EmptyInput(fmt::format("no data inside {}:{}", window.first, window.last));
  }
  const std::vector<int> years = window.years();

  // Cells.
  const std::size_t num_cells = regions.size() * years.size();
  std::vector<std::optional<RegionYearReport>> cells(num_cells);
  std::vector<std::exception_ptr> cell_errors(num_cells);
  parallel_for(num_cells, options.workers, [&](std::size_t i) {
    try {
      cells[i] = analyze_region_year(panel, regions[i / years.size()], years[i % years.size()],
                                     options.thresholds, options.band_multiplier);
    } catch (...) {
      cell_errors[i] = std::current_exception();
    }
  });
  for (const auto& e : cell_errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  report.cells.reserve(num_cells);
  for (auto& c : cells) {
    report.excluded_values += c->freq_table.excluded;
    report.cells.push_back(std::move(*c));
  }
  if (report.excluded_values > 0) {
    report.warnings.push_back(fmt::format(
        "{} zero or negative amounts were excluded from digit analysis", report.excluded_values));
  }

  // Region summaries reuse the cell results.
  std::vector<std::optional<RegionSummary>> summaries(regions.size());
  std::vector<std::exception_ptr> summary_errors(regions.size());
  parallel_for(regions.size(), options.workers, [&](std::size_t r) {
    try {
      std::vector<YearChi2> yearly;
      for (std::size_t y = 0; y < years.size(); ++y) {
        const auto& cell = report.cells[r * years.size() + y];
        yearly.push_back({cell.year, cell.result.chi2, cell.result.classification});
      }
      summaries[r] = finish_summary(panel, regions[r], std::move(yearly), window,
                                    options.thresholds);
    } catch (...) {
      summary_errors[r] = std::current_exception();
    }
  });
  for (const auto& e : summary_errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  for (auto& s : summaries) {
    report.regions.push_back(std::move(*s));
  }

  // Totals and descriptive statistics across regions.
  report.totals = regional_totals(panel, window);
  report.warnings.insert(report.warnings.end(), report.totals.warnings.begin(),
                         report.totals.warnings.end());
  if (regions.size() >= 2) {
    for (int year : years) {
      std::vector<double> column;
      for (const auto& region : regions) {
        column.push_back(report.totals.by_group.at(GroupKey{region, year}));
      }
      report.descriptive_by_year[year] = descriptive_stats(column);
    }
    std::vector<double> means;
    for (const auto& [region, mean] : report.totals.region_window_mean) {
      means.push_back(mean);
    }
    report.descriptive_window_mean = descriptive_stats(means);
  } else {
    report.warnings.push_back("descriptive statistics across regions need at least two regions");
  }

  // Chi-square distributions.
  report.yearly_chi2_summary = chi2_set_summary(collect_chi2_distribution(report.cells),
                                                options.thresholds, options.histogram);
  std::vector<LabeledChi2> means;
  for (const auto& s : report.regions) {
    means.push_back({s.region, std::nullopt, s.mean_chi2});
  }
  report.mean_chi2_summary = chi2_set_summary(means, options.thresholds, options.histogram);
  return report;
}

}  // namespace benford
