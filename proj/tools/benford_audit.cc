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

// benford-audit: first-digit conformity audit of grouped monetary panels.
//
//   benford-audit analyze --input data.csv [--remap remap.json] --years 2007:2011
//       [--group-by region|cluster|national] [--alpha-strict 0.05 --alpha-lenient 0.10]
//       [--band-multiplier 1.0] [--format text,csv,json,plotdata] --out DIR
//       [--fail-on-nonconforming]
//   benford-audit generate --kind benford --n 1000 --seed 7 --out synthetic.csv

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "benford/dataset.h"
#include "benford/errors.h"
#include "benford/report.h"
#include "benford/synthesis.h"

namespace {

std::optional<char> single_char(const std::string& value, const char* flag) {
  if (value.empty()) {
    return std::nullopt;
  }
  if (value == "\\t" || value == "tab") {
    return '\t';
  }
  if (value.size() != 1) {
    throw CLI::ValidationError(flag, "expects a single character");
  }
  return value.front();
}

int generate_command(const std::string& kind_name, const benford::PanelSpec& base,
                     const std::string& years, const std::string& out_path) {
  benford::PanelSpec spec = base;
  const auto kind = benford::parse_generator_kind(kind_name);
  if (!kind) {
    std::cerr << fmt::format(
        "error: unknown kind '{}' (benford, uniform_first_digit, rounded_up, mixture)\n",
        kind_name);
    return benford::kExitError;
  }
  try {
    spec.amounts.kind = *kind;
    spec.window = benford::YearWindow::parse(years);
    const auto records = benford::generate_panel(spec);
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::cerr << fmt::format("error: cannot create '{}'\n", out_path);
      return benford::kExitError;
    }
    benford::write_dataset(out, records);
    out.flush();
    if (!out) {
      std::cerr << fmt::format("error: failed writing '{}'\n", out_path);
      return benford::kExitError;
    }
    std::cout << fmt::format("wrote {} records ({} entities x {} years) to {}\n",
                             records.size(), spec.entities, spec.window.size(), out_path);
  } catch (const benford::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return benford::kExitError;
  }
  return benford::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First-digit (Benford) conformity audit of grouped monetary panels"};
  app.set_version_flag("--version", std::string(benford::kToolVersion));
  app.set_config("--config", "", "Read options from a TOML/INI file; flags override it");
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Run the audit on a dataset");
  benford::RunConfig config;
  std::string years = "2007:2011";
  std::string group_by = "region";
  double alpha_strict = 0.05;
  double alpha_lenient = 0.10;
  std::string formats = "text,csv,json,plotdata";
  std::string remap;
  std::string delimiter = ",";
  std::string decimal = ".";
  std::string thousands;
  if (const char* env = std::getenv(std::string(benford::kOutputDirEnv).c_str())) {
    config.output_dir = env;
  }
  analyze->add_option("--input", config.input_path, "Dataset file (entity_id,entity_name,"
                                                    "region_code,year,amount)")
      ->required();
  analyze->add_option("--remap", remap, "Remap config (JSON)");
  analyze->add_option("--years", years, "Inclusive year window FIRST:LAST")
      ->capture_default_str();
  analyze->add_option("--group-by", group_by, "region, cluster or national")
      ->check(CLI::IsMember({"region", "cluster", "national"}))
      ->capture_default_str();
  analyze->add_option("--alpha-strict", alpha_strict, "Significance of the nonconforming cut")
      ->capture_default_str();
  analyze->add_option("--alpha-lenient", alpha_lenient, "Significance of the conforming cut")
      ->capture_default_str();
  analyze->add_option("--band-multiplier", config.band_multiplier,
                      "Confidence band half-width in units of 1/sqrt(n-1)")
      ->capture_default_str();
  analyze->add_option("--format", formats, "Comma-separated: text,csv,json,plotdata")
      ->capture_default_str();
  analyze->add_option("--out", config.output_dir,
                      fmt::format("Output directory (default: ${})", benford::kOutputDirEnv));
  analyze->add_flag("--fail-on-nonconforming", config.fail_on_nonconforming,
                    "Exit with status 2 when any cell is nonconforming");
  analyze->add_option("--delimiter", delimiter, "Field delimiter")->capture_default_str();
  analyze->add_option("--decimal-separator", decimal, "Decimal separator")
      ->capture_default_str();
  analyze->add_option("--thousands-separator", thousands, "Thousands separator (none by default)");
  analyze->add_option("--workers", config.workers, "Analysis threads (0 = all cores)")
      ->capture_default_str();

  // generate
  auto* generate = app.add_subcommand("generate", "Write a synthetic dataset");
  benford::PanelSpec spec;
  spec.amounts.first_decade = 5;
  spec.amounts.decades = 4;
  std::string kind = "benford";
  std::string gen_years = "2007:2011";
  std::string gen_out;
  generate->add_option("--kind", kind, "benford, uniform_first_digit, rounded_up or mixture")
      ->capture_default_str();
  generate->add_option("--n", spec.entities, "Number of entities")->required();
  generate->add_option("--seed", spec.amounts.seed, "64-bit seed")->required();
  generate->add_option("--out", gen_out, "Output dataset file")->required();
  generate->add_option("--regions", spec.regions, "Number of regions")->capture_default_str();
  generate->add_option("--years", gen_years, "Inclusive year window FIRST:LAST")
      ->capture_default_str();
  generate->add_option("--first-decade", spec.amounts.first_decade,
                       "Smallest power of ten of the amounts")
      ->capture_default_str();
  generate->add_option("--decades", spec.amounts.decades, "Orders of magnitude spanned")
      ->capture_default_str();
  generate->add_option("--tamper-fraction", spec.amounts.tamper_fraction,
                       "Share of tampered values (mixture)")
      ->capture_default_str();
  generate->add_option("--drift", spec.max_drift,
                       "Max yearly log10 drift of each entity's amount")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? benford::kExitOk : benford::kExitError;
  }

  if (generate->parsed()) {
    return generate_command(kind, spec, gen_years, gen_out);
  }

  try {
    config.years = benford::YearWindow::parse(years);
    config.group_by = *benford::parse_group_by(group_by);
    config.thresholds = benford::Thresholds::from_alpha(alpha_strict, alpha_lenient);
    config.formats = benford::parse_formats(formats);
    if (!remap.empty()) {
      config.remap_path = remap;
    }
    config.schema.delimiter = single_char(delimiter, "--delimiter").value_or(',');
    config.schema.decimal_separator = single_char(decimal, "--decimal-separator").value_or('.');
    config.schema.thousands_separator = single_char(thousands, "--thousands-separator");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return benford::kExitError;
  }

  const benford::RunResult result = benford::run(config, std::cerr);
  if (result.exit_status != benford::kExitError) {
    std::cout << fmt::format("wrote {} file(s) to {}\n", result.files.size(), config.output_dir);
  }
  return result.exit_status;
}
