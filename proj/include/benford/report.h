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

// End-to-end audit runs and their output files.
//
// Files written into the output directory, by format:
//
//   text      report.txt
//   csv       chi2_by_year.csv, region_summary.csv, totals.csv, descriptive.csv,
//             cluster_summary.csv (--group-by cluster),
//             chi2_national.csv (--group-by national)
//   json      report.json
//   plotdata  freq_<region>_<year>.csv, chi2_hist_yearly.csv, chi2_hist_means.csv,
//             freq_national_<year>.csv (--group-by national)
//
// Machine formats carry shortest round-trip decimal renderings of every
// double; text tables print frequencies and chi-square values to three
// decimals and mark nonconforming cells with '*'.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "benford/dataset.h"
#include "benford/pipeline.h"
#include "benford/regions.h"

namespace benford {

inline constexpr std::string_view kToolName = "benford-audit";
inline constexpr std::string_view kToolVersion = "0.1.0";
// Environment variable naming the default output directory.
inline constexpr std::string_view kOutputDirEnv = "BENFORD_AUDIT_OUT";

enum class GroupBy { kRegion, kCluster, kNational };
enum class OutputFormat { kText, kCsv, kJson, kPlotData };

std::string_view to_string(GroupBy g);
std::optional<GroupBy> parse_group_by(std::string_view name);
std::string_view to_string(OutputFormat f);
// Comma-separated list, e.g. "text,csv". Throws DomainError.
std::set<OutputFormat> parse_formats(std::string_view list);

struct RunConfig {
  std::string input_path;
  std::optional<std::string> remap_path;
  YearWindow years;
  GroupBy group_by = GroupBy::kRegion;
  Thresholds thresholds;
  double band_multiplier = 1.0;
  std::string output_dir;
  std::set<OutputFormat> formats = {OutputFormat::kText, OutputFormat::kCsv,
                                    OutputFormat::kJson, OutputFormat::kPlotData};
  bool fail_on_nonconforming = false;
  DatasetSchema schema;
  unsigned workers = 0;

  // Throws DomainError.
  void validate() const;
};

// Region rows aggregated under a N/C/S tag. Conformity stays per region.
struct ClusterRow {
  std::string cluster;  // "N", "C", "S" or "?" for unrecognised regions
  std::vector<std::string> regions;
  std::map<int, double> totals;
  double window_mean_total = 0.0;
  // Mean of the member regions' mean chi-square values.
  double mean_of_region_mean_chi2 = 0.0;
  std::size_t nonconforming_cells = 0;
};

struct AuditBundle {
  AuditReport report;
  GroupBy group_by = GroupBy::kRegion;
  // Panel entity counts before and after remapping, per year.
  std::map<int, std::size_t> entities_before_remap;
  std::map<int, std::size_t> entities_after_remap;
  std::vector<ClusterRow> clusters;           // cluster mode
  std::vector<RegionYearReport> national;     // national mode, one per year
};

// Loads, remaps and analyzes without writing anything.
AuditBundle build_audit(const RunConfig& config);

std::vector<ClusterRow> cluster_rows(const AuditReport& report);

// Exit status of a run.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNonconforming = 2;

struct RunResult {
  int exit_status = kExitOk;
  std::vector<std::filesystem::path> files;
};

// Runs the audit and writes the selected formats. Errors are reported on
// `diagnostics` and yield kExitError with any files of this run removed.
RunResult run(const RunConfig& config, std::ostream& diagnostics);

// Writes all selected formats; returns the files written. Throws IoError.
std::vector<std::filesystem::path> write_outputs(const AuditBundle& bundle,
                                                 const std::filesystem::path& dir,
                                                 const std::set<OutputFormat>& formats);

// One row per digit: digit,observed_freq,bl1,band_low,band_high.
void emit_plotdata(const RegionYearReport& report, std::ostream& out);
// freq_<region>_<year>.csv with characters unsafe in file names replaced by '_'.
std::string plotdata_filename(std::string_view region, int year);

void write_chi2_by_year_csv(std::span<const RegionYearReport> cells, std::ostream& out);
void write_region_summary_csv(const AuditReport& report, std::ostream& out);
void write_totals_csv(const AuditReport& report, std::ostream& out);
void write_descriptive_csv(const AuditReport& report, std::ostream& out);
void write_histogram_csv(const Chi2SetSummary& summary, std::ostream& out);
void write_cluster_csv(std::span<const ClusterRow> rows, const YearWindow& window,
                       std::ostream& out);
void render_text(const AuditBundle& bundle, std::ostream& out);
nlohmann::json to_json(const AuditBundle& bundle);

}  // namespace benford
