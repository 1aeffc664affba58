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

#include "benford/report.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include "benford/errors.h"
#include "benford/remap.h"
#include "benford/summation.h"

namespace benford {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

// Shortest decimal that reads back to the same double.
std::string num(double x) {
  if (std::isnan(x)) {
    return "nan";
  }
  return fmt::format("{}", x);
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json digit_array(const DigitArray& a) {
  json out = json::array();
  for (double v : a) {
    out.push_back(number_or_null(v));
  }
  return out;
}

std::string cluster_label(std::string_view region) {
  const auto c = cluster_of(region);
  return c ? std::string(to_string(*c)) : std::string("?");
}

std::map<int, std::size_t> entities_per_year(std::span<const FiscalRecord> records,
                                             const YearWindow& window) {
  std::map<int, std::size_t> out;
  for (const auto& r : records) {
    if (window.contains(r.year)) {
      ++out[r.year];
    }
  }
  return out;
}

json cell_to_json(const RegionYearReport& cell) {
  json j;
  j["region"] = cell.region;
  j["year"] = cell.year;
  j["n"] = cell.freq_table.n;
  j["excluded"] = cell.freq_table.excluded;
  j["counts"] = cell.freq_table.counts;
  j["frequencies"] = digit_array(cell.freq_table.frequencies());
  j["chi2"] = cell.result.chi2;
  j["df"] = cell.result.df;
  j["classification"] = to_string(cell.result.classification);
  j["per_digit_deviation"] = digit_array(cell.result.per_digit_deviation);
  if (cell.result.band) {
    const auto& b = *cell.result.band;
    j["band"] = {{"sigma", b.sigma},
                 {"multiplier", b.multiplier},
                 {"lower", digit_array(b.lower)},
                 {"upper", digit_array(b.upper)}};
  } else {
    j["band"] = nullptr;
  }
  return j;
}

json stats_to_json(const DescriptiveStats& s) {
  return {{"n", s.n},
          {"min", s.min},
          {"max", s.max},
          {"sum", s.sum},
          {"mean", s.mean},
          {"median", s.median},
          {"rms", s.rms},
          {"stddev", s.stddev_sample},
          {"stderr", s.stderr_mean},
          {"skewness", number_or_null(s.skewness)},
          {"kurtosis", number_or_null(s.kurtosis)}};
}

json summary_to_json(const Chi2SetSummary& s) {
  json bins = json::array();
  for (const auto& b : s.bins) {
    bins.push_back({{"lower", b.lower}, {"upper", b.upper}, {"count", b.count}});
  }
  json outliers = json::array();
  for (const auto& o : s.outliers) {
    json item = {{"group", o.group}, {"chi2", o.chi2}};
    item["year"] = o.year ? json(*o.year) : json(nullptr);
    outliers.push_back(item);
  }
  return {{"bins", bins}, {"outliers", outliers}};
}

std::string classification_mark(Classification c) {
  return c == Classification::kNonConforming ? "*" : " ";
}

// Writes one file, tracking it for cleanup.
class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
    const fs::path path = dir_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError(fmt::format("cannot create '{}'", path.string()));
    }
    files_.push_back(path);
    body(out);
    out.flush();
    if (!out) {
      throw IoError(fmt::format("failed writing '{}'", path.string()));
    }
  }

  void remove_all() noexcept {
    for (const auto& f : files_) {
      std::error_code ec;
      fs::remove(f, ec);
    }
    files_.clear();
  }

  std::vector<fs::path> release() { return std::move(files_); }

 private:
  fs::path dir_;
  std::vector<fs::path> files_;
};

void write_cells_csv_rows(std::span<const RegionYearReport> cells, std::ostream& out) {
  for (const auto& c : cells) {
    out << c.region << ',' << c.year << ',' << c.freq_table.n << ',' << c.freq_table.excluded;
    for (double f : c.freq_table.frequencies()) {
      out << ',' << num(f);
    }
    out << ',' << num(c.result.chi2) << ',' << c.result.df << ','
        << to_string(c.result.classification) << ','
        << (c.result.classification == Classification::kNonConforming ? 1 : 0) << '\n';
  }
}

void print_report_errors(const ParseError& e, const std::string& path, std::ostream& diag) {
  constexpr std::size_t kMaxShown = 20;
  std::size_t shown = 0;
  for (const auto& row : e.errors()) {
    if (shown++ == kMaxShown) {
      diag << fmt::format("error: {}: ... {} more\n", path, e.errors().size() - kMaxShown);
      break;
    }
    if (row.column.empty()) {
      diag << fmt::format("error: {}:{}: {}\n", path, row.row, row.reason);
    } else {
      diag << fmt::format("error: {}:{}: column '{}': {}\n", path, row.row, row.column,
                          row.reason);
    }
  }
}

}  // namespace

std::string_view to_string(GroupBy g) {
  switch (g) {
    case GroupBy::kRegion:
      return "region";
    case GroupBy::kCluster:
      return "cluster";
    case GroupBy::kNational:
      return "national";
  }
  return "unknown";
}

std::optional<GroupBy> parse_group_by(std::string_view name) {
  for (auto g : {GroupBy::kRegion, GroupBy::kCluster, GroupBy::kNational}) {
    if (to_string(g) == name) {
      return g;
    }
  }
  return std::nullopt;
}

std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::kText:
      return "text";
    case OutputFormat::kCsv:
      return "csv";
    case OutputFormat::kJson:
      return "json";
    case OutputFormat::kPlotData:
      return "plotdata";
  }
  return "unknown";
}

std::set<OutputFormat> parse_formats(std::string_view list) {
  std::set<OutputFormat> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = list.find(',', start);
    std::string_view item = list.substr(start, comma == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    bool found = false;
    for (auto f : {OutputFormat::kText, OutputFormat::kCsv, OutputFormat::kJson,
                   OutputFormat::kPlotData}) {
      if (to_string(f) == item) {
        out.insert(f);
        found = true;
      }
    }
    if (!found) {
      throw DomainError(fmt::format("unknown output format '{}'", item));
    }
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return out;
}

void RunConfig::validate() const {
  if (input_path.empty()) {
    throw DomainError("no input file given");
  }
  if (output_dir.empty()) {
    throw DomainError(fmt::format("no output directory given (use --out or set {})",
                                  kOutputDirEnv));
  }
  if (formats.empty()) {
    throw DomainError("select at least one output format");
  }
  if (years.last < years.first) {
    throw DomainError("empty year range");
  }
  thresholds.validate();
  if (!(band_multiplier > 0.0) || !std::isfinite(band_multiplier)) {
    throw DomainError(fmt::format("band multiplier must be positive, got {}", band_multiplier));
  }
  schema.validate();
}

std::vector<ClusterRow> cluster_rows(const AuditReport& report) {
  std::map<std::string, ClusterRow> rows;
  std::map<std::string, CompensatedSum> mean_chi2_sums;
  for (const auto& s : report.regions) {
    const std::string label = cluster_label(s.region);
    ClusterRow& row = rows[label];
    row.cluster = label;
    row.regions.push_back(s.region);
    mean_chi2_sums[label].add(s.mean_chi2);
    for (const auto& y : s.yearly) {
      if (y.classification == Classification::kNonConforming) {
        ++row.nonconforming_cells;
      }
    }
  }
  for (auto& [label, row] : rows) {
    std::map<int, CompensatedSum> totals;
    CompensatedSum window_mean;
    for (const auto& region : row.regions) {
      for (const auto& [key, total] : report.totals.by_group) {
        if (key.region == region) {
          totals[key.year].add(total);
        }
      }
      window_mean.add(report.totals.region_window_mean.at(region));
    }
    for (const auto& [year, sum] : totals) {
      row.totals[year] = sum.value();
    }
    row.window_mean_total = window_mean.value();
    row.mean_of_region_mean_chi2 =
        mean_chi2_sums[label].value() / static_cast<double>(row.regions.size());
  }
  std::vector<ClusterRow> out;
  for (const char* label : {"N", "C", "S", "?"}) {
    if (auto it = rows.find(label); it != rows.end()) {
      out.push_back(std::move(it->second));
    }
  }
  return out;
}

AuditBundle build_audit(const RunConfig& config) {
  config.validate();
  AuditBundle bundle;
  bundle.group_by = config.group_by;

  std::vector<FiscalRecord> records = load_dataset(config.input_path, config.schema);
  bundle.entities_before_remap = entities_per_year(records, config.years);
  if (config.remap_path) {
    const RemapConfig remap = load_remap_config(*config.remap_path);
    records = apply_remap(records, remap);
  }
  records = restrict_to_window(records, config.years);
  if (records.empty()) {
    throw EmptyInput(fmt::format("'{}' has no records in {}:{}", config.input_path,
                                 config.years.first, config.years.last));
  }
  bundle.entities_after_remap = entities_per_year(records, config.years);

  const Panel panel = build_panel(records);
  AnalysisOptions options;
  options.window = config.years;
  options.thresholds = config.thresholds;
  options.band_multiplier = config.band_multiplier;
  options.workers = config.workers;
  bundle.report = run_audit(panel, options);

  if (config.group_by == GroupBy::kCluster) {
    bundle.clusters = cluster_rows(bundle.report);
    for (const auto& row : bundle.clusters) {
      if (row.cluster == "?") {
        bundle.report.warnings.push_back(fmt::format(
            "{} region(s) match no N/C/S cluster: {}", row.regions.size(),
            fmt::join(row.regions, ", ")));
      }
    }
  } else if (config.group_by == GroupBy::kNational) {
    const std::vector<std::string> regions = panel.regions();
    for (int year : config.years.years()) {
      bundle.national.push_back(analyze_pooled(panel, "national", regions, year,
                                               config.thresholds, config.band_multiplier));
    }
  }
  return bundle;
}

std::string plotdata_filename(std::string_view region, int year) {
  std::string safe;
  for (char c : region) {
    const auto u = static_cast<unsigned char>(c);
    safe += (std::isalnum(u) || c == '-' || c == '_' || c == '.') ? c : '_';
  }
  return fmt::format("freq_{}_{}.csv", safe, year);
}

void emit_plotdata(const RegionYearReport& report, std::ostream& out) {
  const DigitArray observed = report.freq_table.frequencies();
  const DigitArray& p = bl1_distribution();
  out << "digit,observed_freq,bl1,band_low,band_high\n";
  for (std::size_t i = 0; i < kNumDigits; ++i) {
    out << (i + 1) << ',' << num(observed[i]) << ',' << num(p[i]) << ',';
    if (report.result.band) {
      out << num(report.result.band->lower[i]) << ',' << num(report.result.band->upper[i]);
    } else {
      out << ',';
    }
    out << '\n';
  }
}

void write_chi2_by_year_csv(std::span<const RegionYearReport> cells, std::ostream& out) {
  out << "region,year,n,excluded,freq_1,freq_2,freq_3,freq_4,freq_5,freq_6,freq_7,freq_8,"
         "freq_9,chi2,df,classification,nonconforming\n";
  write_cells_csv_rows(cells, out);
}

void write_region_summary_csv(const AuditReport& report, std::ostream& out) {
  const std::vector<int> years = report.options.window.years();
  out << "region,cluster,n_entities";
  for (int y : years) {
    out << ",chi2_" << y;
  }
  out << ",mean_chi2,classification_of_mean,chi2_time_average,classification_time_average\n";
  for (const auto& s : report.regions) {
    out << s.region << ',' << cluster_label(s.region) << ',' << s.entity_count;
    for (const auto& y : s.yearly) {
      out << ',' << num(y.chi2);
    }
    out << ',' << num(s.mean_chi2) << ',' << to_string(s.classification_of_mean) << ','
        << num(s.chi2_of_time_averages) << ',' << to_string(s.classification_of_time_averages)
        << '\n';
  }
}

void write_totals_csv(const AuditReport& report, std::ostream& out) {
  const std::vector<int> years = report.options.window.years();
  out << "region";
  for (int y : years) {
    out << ',' << y;
  }
  out << ",window_mean\n";
  for (const auto& [region, mean] : report.totals.region_window_mean) {
    out << region;
    for (int y : years) {
      const auto it = report.totals.by_group.find(GroupKey{region, y});
      out << ',' << (it == report.totals.by_group.end() ? std::string() : num(it->second));
    }
    out << ',' << num(mean) << '\n';
  }
  out << "national";
  for (int y : years) {
    const auto it = report.totals.national.find(y);
    out << ',' << (it == report.totals.national.end() ? std::string() : num(it->second));
  }
  out << ',' << num(report.totals.national_window_mean) << '\n';
}

void write_descriptive_csv(const AuditReport& report, std::ostream& out) {
  std::vector<std::pair<std::string, const DescriptiveStats*>> columns;
  for (const auto& [year, stats] : report.descriptive_by_year) {
    columns.emplace_back(std::to_string(year), &stats);
  }
  if (report.descriptive_window_mean) {
    columns.emplace_back("window_mean", &*report.descriptive_window_mean);
  }
  out << "statistic";
  for (const auto& [name, stats] : columns) {
    out << ',' << name;
  }
  out << '\n';
  const std::vector<std::pair<const char*, std::function<double(const DescriptiveStats&)>>>
      rows = {
          {"n", [](const DescriptiveStats& s) { return static_cast<double>(s.n); }},
          {"min", [](const DescriptiveStats& s) { return s.min; }},
          {"max", [](const DescriptiveStats& s) { return s.max; }},
          {"sum", [](const DescriptiveStats& s) { return s.sum; }},
          {"mean", [](const DescriptiveStats& s) { return s.mean; }},
          {"median", [](const DescriptiveStats& s) { return s.median; }},
          {"rms", [](const DescriptiveStats& s) { return s.rms; }},
          {"stddev", [](const DescriptiveStats& s) { return s.stddev_sample; }},
          {"stderr", [](const DescriptiveStats& s) { return s.stderr_mean; }},
          {"skewness", [](const DescriptiveStats& s) { return s.skewness; }},
          {"kurtosis", [](const DescriptiveStats& s) { return s.kurtosis; }},
      };
  for (const auto& [name, get] : rows) {
    out << name;
    for (const auto& [column, stats] : columns) {
      out << ',' << num(get(*stats));
    }
    out << '\n';
  }
}

void write_histogram_csv(const Chi2SetSummary& summary, std::ostream& out) {
  out << "bin_lower,bin_upper,count\n";
  for (const auto& b : summary.bins) {
    out << num(b.lower) << ',' << num(b.upper) << ',' << b.count << '\n';
  }
}

void write_cluster_csv(std::span<const ClusterRow> rows, const YearWindow& window,
                       std::ostream& out) {
  out << "cluster,regions";
  for (int y : window.years()) {
    out << ",total_" << y;
  }
  out << ",window_mean_total,mean_of_region_mean_chi2,nonconforming_cells\n";
  for (const auto& row : rows) {
    out << row.cluster << ',' << row.regions.size();
    for (int y : window.years()) {
      const auto it = row.totals.find(y);
      out << ',' << (it == row.totals.end() ? std::string() : num(it->second));
    }
    out << ',' << num(row.window_mean_total) << ',' << num(row.mean_of_region_mean_chi2) << ','
        << row.nonconforming_cells << '\n';
  }
}

void render_text(const AuditBundle& bundle, std::ostream& out) {
  const AuditReport& report = bundle.report;
  const YearWindow& window = report.options.window;
  const Thresholds& t = report.options.thresholds;

  out << fmt::format("{} {} first-digit audit, years {}-{}\n", kToolName, kToolVersion,
                     window.first, window.last);
  out << fmt::format("thresholds: chi2 <= {:.3f} conforming (alpha {}), > {:.3f} "
                     "nonconforming (alpha {}), df = {}\n",
                     t.chi2_lenient, t.alpha_lenient, t.chi2_strict, t.alpha_strict,
                     kDegreesOfFreedom);
  if (!bundle.entities_before_remap.empty()) {
    out << "entities per year (input -> analyzed):";
    for (const auto& [year, count] : bundle.entities_before_remap) {
      const auto it = bundle.entities_after_remap.find(year);
      out << fmt::format(" {}: {} -> {};", year, count,
                         it == bundle.entities_after_remap.end() ? 0 : it->second);
    }
    out << '\n';
  }

  out << "\nFirst-digit frequencies and chi-square ('*' = nonconforming)\n";
  out << fmt::format("{:<6}", "year");
  for (int d = 1; d <= 9; ++d) {
    out << fmt::format(" {:>6}", d);
  }
  out << fmt::format(" {:>9}\n", "chi2");
  out << fmt::format("{:<6}", "BL1");
  for (double p : bl1_distribution()) {
    out << fmt::format(" {:>6.3f}", p);
  }
  out << '\n';
  std::string current;
  for (const auto& c : report.cells) {
    if (c.region != current) {
      current = c.region;
      const auto* summary = report.find_region(c.region);
      out << fmt::format("-- {}, N = {}\n", c.region, summary ? summary->entity_count : 0);
    }
    out << fmt::format("{:<6}", c.year);
    for (double f : c.freq_table.frequencies()) {
      out << fmt::format(" {:>6.3f}", f);
    }
    out << fmt::format(" {:>8.3f}{}\n", c.result.chi2,
                       classification_mark(c.result.classification));
  }

  out << "\nRegion summary\n";
  out << fmt::format("{:<24} {:>3} {:>7} {:>10} {:>14} {:>12}\n", "region", "cl", "N",
                     "<chi2>", "class", "chi2(<AIT>)");
  for (const auto& s : report.regions) {
    out << fmt::format("{:<24} {:>3} {:>7} {:>10.4f} {:>14} {:>12.3f}\n", s.region,
                       cluster_label(s.region), s.entity_count, s.mean_chi2,
                       to_string(s.classification_of_mean), s.chi2_of_time_averages);
  }

  out << "\nTotals\n";
  out << fmt::format("{:<24}", "region");
  for (int y : window.years()) {
    out << fmt::format(" {:>12}", y);
  }
  out << fmt::format(" {:>12}\n", "mean");
  for (const auto& [region, mean] : report.totals.region_window_mean) {
    out << fmt::format("{:<24}", region);
    for (int y : window.years()) {
      const auto it = report.totals.by_group.find(GroupKey{region, y});
      out << (it == report.totals.by_group.end() ? fmt::format(" {:>12}", "-")
                                                 : fmt::format(" {:>12.5g}", it->second));
    }
    out << fmt::format(" {:>12.5g}\n", mean);
  }
  out << fmt::format("{:<24}", "national");
  for (int y : window.years()) {
    const auto it = report.totals.national.find(y);
    out << (it == report.totals.national.end() ? fmt::format(" {:>12}", "-")
                                               : fmt::format(" {:>12.5g}", it->second));
  }
  out << fmt::format(" {:>12.5g}\n", report.totals.national_window_mean);

  if (!report.descriptive_by_year.empty()) {
    out << "\nDescriptive statistics of regional totals\n";
    out << fmt::format("{:<10}", "");
    for (const auto& [year, s] : report.descriptive_by_year) {
      out << fmt::format(" {:>12}", year);
    }
    if (report.descriptive_window_mean) {
      out << fmt::format(" {:>12}", "mean");
    }
    out << '\n';
    auto row = [&](const char* name, double DescriptiveStats::*field) {
      out << fmt::format("{:<10}", name);
      for (const auto& [year, s] : report.descriptive_by_year) {
        out << fmt::format(" {:>12.5g}", s.*field);
      }
      if (report.descriptive_window_mean) {
        out << fmt::format(" {:>12.5g}", (*report.descriptive_window_mean).*field);
      }
      out << '\n';
    };
    row("min", &DescriptiveStats::min);
    row("max", &DescriptiveStats::max);
    row("sum", &DescriptiveStats::sum);
    row("mean", &DescriptiveStats::mean);
    row("median", &DescriptiveStats::median);
    row("rms", &DescriptiveStats::rms);
    row("stddev", &DescriptiveStats::stddev_sample);
    row("stderr", &DescriptiveStats::stderr_mean);
    row("skewness", &DescriptiveStats::skewness);
    row("kurtosis", &DescriptiveStats::kurtosis);
  }

  auto outliers = [&](const char* title, const Chi2SetSummary& s) {
    out << fmt::format("\n{}: {} value(s) above {:.3f}\n", title, s.outliers.size(),
                       t.chi2_strict);
    for (const auto& o : s.outliers) {
      out << fmt::format("  {}{} {:.3f}\n", o.group,
                         o.year ? fmt::format(" {}", *o.year) : std::string(), o.chi2);
    }
  };
  outliers("Yearly chi-square outliers", report.yearly_chi2_summary);
  outliers("Mean chi-square outliers", report.mean_chi2_summary);

  if (!bundle.clusters.empty()) {
    out << "\nClusters\n";
    out << fmt::format("{:<4} {:>8} {:>14} {:>14} {:>6}\n", "cl", "regions", "mean total",
                       "mean <chi2>", "NC");
    for (const auto& row : bundle.clusters) {
      out << fmt::format("{:<4} {:>8} {:>14.5g} {:>14.4f} {:>6}\n", row.cluster,
                         row.regions.size(), row.window_mean_total,
                         row.mean_of_region_mean_chi2, row.nonconforming_cells);
    }
  }
  if (!bundle.national.empty()) {
    out << "\nNational pooled digits\n";
    for (const auto& c : bundle.national) {
      out << fmt::format("{:<6}", c.year);
      for (double f : c.freq_table.frequencies()) {
        out << fmt::format(" {:>6.3f}", f);
      }
      out << fmt::format(" {:>8.3f}{}\n", c.result.chi2,
                         classification_mark(c.result.classification));
    }
  }

  if (!report.warnings.empty()) {
    out << "\nWarnings\n";
    for (const auto& w : report.warnings) {
      out << "  " << w << '\n';
    }
  }
}

json to_json(const AuditBundle& bundle) {
  const AuditReport& report = bundle.report;
  json j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["config"] = {
      {"years", {report.options.window.first, report.options.window.last}},
      {"group_by", to_string(bundle.group_by)},
      {"band_multiplier", report.options.band_multiplier},
      {"thresholds",
       {{"chi2_strict", report.options.thresholds.chi2_strict},
        {"chi2_lenient", report.options.thresholds.chi2_lenient},
        {"alpha_strict", report.options.thresholds.alpha_strict},
        {"alpha_lenient", report.options.thresholds.alpha_lenient}}},
      {"df", kDegreesOfFreedom}};
  j["bl1"] = digit_array(bl1_distribution());

  json cells = json::array();
  for (const auto& c : report.cells) {
    cells.push_back(cell_to_json(c));
  }
  j["cells"] = cells;

  json regions = json::array();
  for (const auto& s : report.regions) {
    json yearly = json::array();
    for (const auto& y : s.yearly) {
      yearly.push_back({{"year", y.year},
                        {"chi2", y.chi2},
                        {"classification", to_string(y.classification)}});
    }
    regions.push_back({{"region", s.region},
                       {"cluster", cluster_label(s.region)},
                       {"entity_count", s.entity_count},
                       {"yearly", yearly},
                       {"mean_chi2", s.mean_chi2},
                       {"classification_of_mean", to_string(s.classification_of_mean)},
                       {"chi2_of_time_averages", s.chi2_of_time_averages},
                       {"classification_of_time_averages",
                        to_string(s.classification_of_time_averages)}});
  }
  j["regions"] = regions;

  json by_region = json::object();
  for (const auto& [key, total] : report.totals.by_group) {
    by_region[key.region][std::to_string(key.year)] = total;
  }
  json national = json::object();
  for (const auto& [year, total] : report.totals.national) {
    national[std::to_string(year)] = total;
  }
  j["totals"] = {{"by_region", by_region},
                 {"national", national},
                 {"region_window_mean", report.totals.region_window_mean},
                 {"national_window_mean", report.totals.national_window_mean}};

  json by_year = json::object();
  for (const auto& [year, s] : report.descriptive_by_year) {
    by_year[std::to_string(year)] = stats_to_json(s);
  }
  j["descriptive"] = {{"by_year", by_year},
                      {"window_mean", report.descriptive_window_mean
                                          ? stats_to_json(*report.descriptive_window_mean)
                                          : json(nullptr)}};
  j["chi2_distribution"] = {{"yearly", summary_to_json(report.yearly_chi2_summary)},
                            {"means", summary_to_json(report.mean_chi2_summary)}};

  if (bundle.group_by == GroupBy::kCluster) {
    json clusters = json::array();
    for (const auto& row : bundle.clusters) {
      json totals = json::object();
      for (const auto& [year, total] : row.totals) {
        totals[std::to_string(year)] = total;
      }
      clusters.push_back({{"cluster", row.cluster},
                          {"regions", row.regions},
                          {"totals", totals},
                          {"window_mean_total", row.window_mean_total},
                          {"mean_of_region_mean_chi2", row.mean_of_region_mean_chi2},
                          {"nonconforming_cells", row.nonconforming_cells}});
    }
    j["clusters"] = clusters;
  }
  if (bundle.group_by == GroupBy::kNational) {
    json pooled = json::array();
    for (const auto& c : bundle.national) {
      pooled.push_back(cell_to_json(c));
    }
    j["national"] = pooled;
  }

  json entities = json::object();
  for (const auto& [year, count] : bundle.entities_before_remap) {
    entities[std::to_string(year)]["input"] = count;
  }
  for (const auto& [year, count] : bundle.entities_after_remap) {
    entities[std::to_string(year)]["analyzed"] = count;
  }
  j["entities"] = entities;
  j["excluded_values"] = report.excluded_values;
  j["warnings"] = report.warnings;
  return j;
}

std::vector<fs::path> write_outputs(const AuditBundle& bundle, const fs::path& dir,
                                    const std::set<OutputFormat>& formats) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError(fmt::format("cannot create output directory '{}': {}", dir.string(),
                              ec.message()));
  }
  const AuditReport& report = bundle.report;
  OutputSet files(dir);
  try {
    if (formats.count(OutputFormat::kText) != 0) {
      files.write("report.txt", [&](std::ostream& out) { render_text(bundle, out); });
    }
    if (formats.count(OutputFormat::kCsv) != 0) {
      files.write("chi2_by_year.csv",
                  [&](std::ostream& out) { write_chi2_by_year_csv(report.cells, out); });
      files.write("region_summary.csv",
                  [&](std::ostream& out) { write_region_summary_csv(report, out); });
      files.write("totals.csv", [&](std::ostream& out) { write_totals_csv(report, out); });
      files.write("descriptive.csv",
                  [&](std::ostream& out) { write_descriptive_csv(report, out); });
      if (bundle.group_by == GroupBy::kCluster) {
        files.write("cluster_summary.csv", [&](std::ostream& out) {
          write_cluster_csv(bundle.clusters, report.options.window, out);
        });
      }
      if (bundle.group_by == GroupBy::kNational) {
        files.write("chi2_national.csv",
                    [&](std::ostream& out) { write_chi2_by_year_csv(bundle.national, out); });
      }
    }
    if (formats.count(OutputFormat::kJson) != 0) {
      files.write("report.json",
                  [&](std::ostream& out) { out << to_json(bundle).dump(2) << '\n'; });
    }
    if (formats.count(OutputFormat::kPlotData) != 0) {
      for (const auto& c : report.cells) {
        files.write(plotdata_filename(c.region, c.year),
                    [&](std::ostream& out) { emit_plotdata(c, out); });
      }
      for (const auto& c : bundle.national) {
        files.write(plotdata_filename("national", c.year),
                    [&](std::ostream& out) { emit_plotdata(c, out); });
      }
      files.write("chi2_hist_yearly.csv", [&](std::ostream& out) {
        write_histogram_csv(report.yearly_chi2_summary, out);
      });
      files.write("chi2_hist_means.csv", [&](std::ostream& out) {
        write_histogram_csv(report.mean_chi2_summary, out);
      });
    }
  } catch (...) {
    files.remove_all();
    throw;
  }
  return files.release();
}

RunResult run(const RunConfig& config, std::ostream& diagnostics) {
  RunResult result;
  try {
    const AuditBundle bundle = build_audit(config);
    result.files = write_outputs(bundle, config.output_dir, config.formats);
    for (const auto& w : bundle.report.warnings) {
      diagnostics << "warning: " << w << '\n';
    }
    if (config.fail_on_nonconforming && bundle.report.any_nonconforming()) {
      std::size_t count = 0;
      for (const auto& c : bundle.report.cells) {
        if (c.result.classification == Classification::kNonConforming) {
          diagnostics << fmt::format("nonconforming: {} {} chi2 = {:.3f}\n", c.region, c.year,
                                     c.result.chi2);
          ++count;
        }
      }
      diagnostics << fmt::format("audit gate: {} nonconforming cell(s)\n", count);
      result.exit_status = kExitNonconforming;
    }
  } catch (const ParseError& e) {
    print_report_errors(e, config.input_path, diagnostics);
    result.exit_status = kExitError;
  } catch (const DuplicateKey& e) {
    diagnostics << fmt::format("error: {}: {}\n", config.input_path, e.what());
    result.exit_status = kExitError;
  } catch (const UnknownEntity& e) {
    diagnostics << fmt::format("error: {}: {}\n", config.remap_path.value_or("<remap>"),
                               e.what());
    result.exit_status = kExitError;
  } catch (const ConfigError& e) {
    diagnostics << fmt::format("error: {}: {}\n", config.remap_path.value_or("<config>"),
                               e.what());
    result.exit_status = kExitError;
  } catch (const std::exception& e) {
    diagnostics << "error: " << e.what() << '\n';
    result.exit_status = kExitError;
  }
  if (result.exit_status == kExitError) {
    result.files.clear();
  }
  return result;
}

}  // namespace benford
