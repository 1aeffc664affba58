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
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "benford/errors.h"
#include "benford/regions.h"
#include "benford/synthesis.h"
#include "reference_values.h"

namespace benford {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) {
    out.push_back(item);
  }
  if (!line.empty() && line.back() == sep) {
    out.emplace_back();
  }
  return out;
}

std::vector<std::string> lines_of(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    out.push_back(line);
  }
  return out;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class ReportTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           (std::string("benford_report_") + info->name() + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Two Benford regions and one region with uniform first digits.
  fs::path write_fixture() {
    std::vector<FiscalRecord> all;
    PanelSpec good;
    good.amounts = {GeneratorKind::kBenfordLogUniform, 1, 5, 4, 0.0, 0x5EED0101};
    good.entities = 3000;
    good.regions = 2;
    all = generate_panel(good);
    PanelSpec bad = good;
    bad.amounts.kind = GeneratorKind::kUniformFirstDigit;
    bad.amounts.seed = 0x5EED0102;
    bad.entities = 600;
    bad.regions = 1;
    for (auto r : generate_panel(bad)) {
      r.entity_id = "U" + r.entity_id;
      r.region_code = "UNI";
      all.push_back(r);
    }
    const fs::path path = dir_ / "fixture.csv";
    std::ofstream out(path);
    write_dataset(out, all);
    return path;
  }

  RunConfig config_for(const fs::path& input, const std::string& out) {
    RunConfig c;
    c.input_path = input.string();
    c.output_dir = (dir_ / out).string();
    return c;
  }

  fs::path dir_;
};

TEST_F(ReportTest, PlotDataRows) {
  const auto input = write_fixture();
  std::ostringstream diag;
  const auto result = run(config_for(input, "out"), diag);
  ASSERT_EQ(result.exit_status, kExitOk) << diag.str();
  const auto rows = lines_of(dir_ / "out" / "freq_R01_2009.csv");
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(rows[0], "digit,observed_freq,bl1,band_low,band_high");
  const double sigma = 1.0 / std::sqrt(1500.0 - 1.0);
  double observed_sum = 0.0;
  for (std::size_t d = 1; d <= 9; ++d) {
    const auto f = split(rows[d]);
    ASSERT_EQ(f.size(), 5u);
    EXPECT_EQ(std::stoi(f[0]), static_cast<int>(d));
    const double bl1 = std::stod(f[2]);
    EXPECT_NEAR(bl1, std::log10(1.0 + 1.0 / static_cast<double>(d)), 5e-7);
    EXPECT_NEAR(bl1, testing::kPrintedBl1[d - 1], 5e-4);
    EXPECT_NEAR(bl1 - std::stod(f[3]), sigma, 1e-15);
    EXPECT_NEAR(std::stod(f[4]) - bl1, sigma, 1e-15);
    observed_sum += std::stod(f[1]);
  }
  EXPECT_NEAR(observed_sum, 1.0, 1e-9);
}

TEST_F(ReportTest, PlotDataSingleValueHasEmptyBand) {
  RegionYearReport r;
  r.region = "X";
  r.year = 2007;
  r.freq_table = DigitFrequencyTable::from_counts({0, 0, 1, 0, 0, 0, 0, 0, 0});
  r.result = assess(r.freq_table, Thresholds{});
  std::ostringstream out;
  emit_plotdata(r, out);
  std::vector<std::string> rows;
  std::istringstream in(out.str());
  for (std::string line; std::getline(in, line);) {
    rows.push_back(line);
  }
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(rows[3].substr(0, 4), "3,1,");
  EXPECT_EQ(rows[3].substr(rows[3].size() - 2), ",,");
  EXPECT_EQ(plotdata_filename("Valle d'Aosta", 2011), "freq_Valle_d_Aosta_2011.csv");
}

TEST_F(ReportTest, CsvAndJsonCarryTheSameNumbers) {
  const auto input = write_fixture();
  std::ostringstream diag;
  ASSERT_EQ(run(config_for(input, "out"), diag).exit_status, kExitOk) << diag.str();
  const json report = json::parse(slurp(dir_ / "out" / "report.json"));
  const auto rows = lines_of(dir_ / "out" / "chi2_by_year.csv");
  ASSERT_EQ(rows.size(), report["cells"].size() + 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = split(rows[i]);
    ASSERT_EQ(f.size(), 17u);
    const json& cell = report["cells"][i - 1];
    EXPECT_EQ(f[0], cell["region"].get<std::string>());
    EXPECT_EQ(std::stoi(f[1]), cell["year"].get<int>());
    EXPECT_EQ(std::stoull(f[2]), cell["n"].get<std::uint64_t>());
    for (std::size_t d = 0; d < 9; ++d) {
      EXPECT_EQ(std::stod(f[4 + d]), cell["frequencies"][d].get<double>());
    }
    EXPECT_EQ(std::stod(f[13]), cell["chi2"].get<double>());
    EXPECT_EQ(f[15], cell["classification"].get<std::string>());
    EXPECT_EQ(f[16] == "1", f[15] == "nonconforming");
  }

  const auto summary = lines_of(dir_ / "out" / "region_summary.csv");
  ASSERT_EQ(summary.size(), report["regions"].size() + 1);
  const auto header = split(summary[0]);
  const auto mean_col = std::find(header.begin(), header.end(), "mean_chi2") - header.begin();
  ASSERT_LT(static_cast<std::size_t>(mean_col), header.size());
  for (std::size_t i = 1; i < summary.size(); ++i) {
    EXPECT_EQ(std::stod(split(summary[i])[mean_col]),
              report["regions"][i - 1]["mean_chi2"].get<double>());
  }
}

TEST_F(ReportTest, TextFlagsExactlyNonconformingCells) {
  const auto input = write_fixture();
  std::ostringstream diag;
  ASSERT_EQ(run(config_for(input, "out"), diag).exit_status, kExitOk);
  const auto bundle = build_audit(config_for(input, "unused"));
  std::map<std::pair<std::string, int>, bool> flagged;
  std::string region;
  bool in_table = false;
  for (const auto& line : lines_of(dir_ / "out" / "report.txt")) {
    if (line.rfind("First-digit frequencies", 0) == 0) {
      in_table = true;
      continue;
    }
    if (!in_table) {
      continue;
    }
    if (line.empty()) {
      break;
    }
    if (line.rfind("-- ", 0) == 0) {
      region = line.substr(3, line.find(',') - 3);
    } else if (std::isdigit(static_cast<unsigned char>(line[0]))) {
      flagged[{region, std::stoi(line)}] = line.back() == '*';
    }
  }
  ASSERT_EQ(flagged.size(), bundle.report.cells.size());
  std::size_t marks = 0;
  for (const auto& c : bundle.report.cells) {
    const bool nonconforming = c.result.classification == Classification::kNonConforming;
    EXPECT_EQ(flagged.at({c.region, c.year}), nonconforming) << c.region << " " << c.year;
    marks += nonconforming;
  }
  EXPECT_EQ(marks, 5u);  // the uniform region, every year
}

TEST_F(ReportTest, IdenticalRunsAreBitIdentical) {
  const auto input = write_fixture();
  std::ostringstream diag;
  auto a = config_for(input, "a");
  auto b = config_for(input, "b");
  a.group_by = b.group_by = GroupBy::kCluster;
  b.workers = 1;
  const auto ra = run(a, diag);
  const auto rb = run(b, diag);
  ASSERT_EQ(ra.exit_status, kExitOk);
  ASSERT_EQ(ra.files.size(), rb.files.size());
  for (const auto& f : ra.files) {
    EXPECT_EQ(slurp(f), slurp(dir_ / "b" / f.filename())) << f.filename();
  }
}

TEST_F(ReportTest, ExitStatuses) {
  const auto input = write_fixture();
  std::ostringstream diag;
  auto c = config_for(input, "gate");
  EXPECT_EQ(run(c, diag).exit_status, kExitOk);
  c.fail_on_nonconforming = true;
  diag.str("");
  const auto gated = run(c, diag);
  EXPECT_EQ(gated.exit_status, kExitNonconforming);
  EXPECT_FALSE(gated.files.empty());
  EXPECT_NE(diag.str().find("UNI"), std::string::npos);

  auto missing = config_for(dir_ / "no_such_file.csv", "missing");
  diag.str("");
  const auto failed = run(missing, diag);
  EXPECT_EQ(failed.exit_status, kExitError);
  EXPECT_NE(diag.str().find("no_such_file.csv"), std::string::npos);
  EXPECT_TRUE(failed.files.empty());
}

TEST_F(ReportTest, ParseErrorsNameFileAndRow) {
  const fs::path path = dir_ / "broken.csv";
  std::ofstream(path) << "entity_id,entity_name,region_code,year,amount\nA,a,LOM,2007,12\n"
                         "B,b,LOM,2007,twelve\n";
  std::ostringstream diag;
  EXPECT_EQ(run(config_for(path, "out"), diag).exit_status, kExitError);
  EXPECT_NE(diag.str().find(path.string() + ":3: column 'amount'"), std::string::npos)
      << diag.str();
  EXPECT_FALSE(fs::exists(dir_ / "out" / "report.txt"));
}

TEST_F(ReportTest, RemapErrorsNameTheConfig) {
  const auto input = write_fixture();
  const fs::path remap = dir_ / "remap.json";
  std::ofstream(remap) << R"({"mergers": [{"source_ids": ["GHOST"], "target_id": "T"}]})";
  auto c = config_for(input, "out");
  c.remap_path = remap.string();
  std::ostringstream diag;
  EXPECT_EQ(run(c, diag).exit_status, kExitError);
  EXPECT_NE(diag.str().find("remap.json"), std::string::npos);
  EXPECT_NE(diag.str().find("GHOST"), std::string::npos);
}

TEST_F(ReportTest, PartialOutputsAreRemoved) {
  const auto input = write_fixture();
  auto c = config_for(input, "out");
  // A directory where a CSV file should go makes the third write fail.
  fs::create_directories(dir_ / "out" / "region_summary.csv");
  std::ostringstream diag;
  const auto result = run(c, diag);
  EXPECT_EQ(result.exit_status, kExitError);
  EXPECT_FALSE(fs::exists(dir_ / "out" / "report.txt"));
  EXPECT_FALSE(fs::exists(dir_ / "out" / "chi2_by_year.csv"));
  EXPECT_TRUE(fs::is_directory(dir_ / "out" / "region_summary.csv"));
}

TEST_F(ReportTest, NationalModeAddsPooledCells) {
  const auto input = write_fixture();
  auto c = config_for(input, "out");
  c.group_by = GroupBy::kNational;
  const auto bundle = build_audit(c);
  ASSERT_EQ(bundle.national.size(), 5u);
  for (const auto& cell : bundle.national) {
    EXPECT_EQ(cell.region, "national");
    EXPECT_EQ(cell.freq_table.n, 3600u);
  }
  std::ostringstream diag;
  ASSERT_EQ(run(c, diag).exit_status, kExitOk);
  EXPECT_EQ(lines_of(dir_ / "out" / "chi2_national.csv").size(), 6u);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "freq_national_2011.csv"));
}

TEST(Regions, ClusterPartition) {
  std::map<Cluster, std::size_t> sizes;
  for (const auto& r : italian_regions()) {
    ++sizes[r.cluster];
  }
  EXPECT_EQ(italian_regions().size(), 20u);
  EXPECT_EQ(sizes[Cluster::kNorth], 8u);
  EXPECT_EQ(sizes[Cluster::kCenter], 5u);
  EXPECT_EQ(sizes[Cluster::kSouth], 7u);
  EXPECT_EQ(cluster_members(Cluster::kNorth).size() + cluster_members(Cluster::kCenter).size() +
                cluster_members(Cluster::kSouth).size(),
            20u);
  EXPECT_EQ(cluster_of("Emilia-Romagna"), Cluster::kNorth);
  EXPECT_EQ(cluster_of("EM. ROMAGNA"), Cluster::kNorth);
  EXPECT_EQ(cluster_of("lazio"), Cluster::kCenter);
  EXPECT_EQ(cluster_of("Valle d'Aosta"), Cluster::kNorth);
  EXPECT_EQ(cluster_of("SAR"), Cluster::kSouth);
  EXPECT_FALSE(cluster_of("Atlantis").has_value());
  for (const auto& r : testing::kRegions) {
    EXPECT_NE(find_region(r.name), nullptr) << r.name;
    EXPECT_EQ(find_region(r.name), find_region(r.code)) << r.name;
  }
}

TEST_F(ReportTest, ClusterRowsAggregateRegionalTotals) {
  std::vector<FiscalRecord> records;
  for (const auto& r : testing::kRegions) {
    for (std::size_t y = 0; y < 5; ++y) {
      records.push_back({std::string(r.code), std::string(r.name), std::string(r.code),
                         testing::kYears[y], r.total[y] * 1e10});
    }
  }
  const fs::path path = dir_ / "regional.csv";
  {
    std::ofstream out(path);
    write_dataset(out, records);
  }
  auto c = config_for(path, "out");
  c.group_by = GroupBy::kCluster;
  const auto bundle = build_audit(c);
  ASSERT_EQ(bundle.clusters.size(), 3u);
  std::map<std::string, std::size_t> sizes;
  for (const auto& row : bundle.clusters) {
    sizes[row.cluster] = row.regions.size();
  }
  EXPECT_EQ(sizes, (std::map<std::string, std::size_t>{{"C", 5}, {"N", 8}, {"S", 7}}));
  for (int year : testing::kYears) {
    double sum = 0.0;
    for (const auto& row : bundle.clusters) {
      sum += row.totals.at(year);
    }
    EXPECT_NEAR(sum, bundle.report.totals.national.at(year),
                1e-12 * bundle.report.totals.national.at(year));
  }
  // Conformity stays per region.
  EXPECT_EQ(bundle.report.cells.size(), 100u);
}

TEST(RunConfig, Validation) {
  RunConfig c;
  EXPECT_THROW(c.validate(), DomainError);
  c.input_path = "x.csv";
  EXPECT_THROW(c.validate(), DomainError);
  c.output_dir = "out";
  EXPECT_NO_THROW(c.validate());
  c.formats.clear();
  EXPECT_THROW(c.validate(), DomainError);
  c.formats = {OutputFormat::kCsv};
  c.band_multiplier = -1.0;
  EXPECT_THROW(c.validate(), DomainError);
  EXPECT_EQ(parse_formats("text, json"),
            (std::set<OutputFormat>{OutputFormat::kText, OutputFormat::kJson}));
  EXPECT_THROW(parse_formats("text,pdf"), DomainError);
  EXPECT_EQ(parse_group_by("cluster"), GroupBy::kCluster);
  EXPECT_FALSE(parse_group_by("province").has_value());
}

}  // namespace
}  // namespace benford
