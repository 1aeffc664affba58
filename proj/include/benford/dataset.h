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

// Delimiter-separated fiscal datasets. One row per entity and year:
//
//   entity_id,entity_name,region_code,year,amount
//   IT-MI-001,Milano,LOM,2007,123456.78
//
// Fields may be double-quoted (RFC 4180 style). Column names, the field
// delimiter and the number separators are configurable through DatasetSchema.

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace benford {

struct FiscalRecord {
  std::string entity_id;
  std::string entity_name;
  std::string region_code;
  int year = 0;
  double amount = 0.0;  // EUR, finite and nonnegative

  friend bool operator==(const FiscalRecord&, const FiscalRecord&) = default;
};

// Inclusive range of fiscal years.
struct YearWindow {
  int first = 2007;
  int last = 2011;

  // Parses "2007:2011" or a single year "2009". Throws DomainError.
  static YearWindow parse(std::string_view text);

  bool contains(int year) const { return year >= first && year <= last; }
  std::vector<int> years() const;
  std::size_t size() const { return static_cast<std::size_t>(last - first + 1); }

  friend bool operator==(const YearWindow&, const YearWindow&) = default;
};

struct DatasetSchema {
  std::string entity_id_column = "entity_id";
  std::string entity_name_column = "entity_name";
  std::string region_column = "region_code";
  std::string year_column = "year";
  std::string amount_column = "amount";
  char delimiter = ',';
  char decimal_separator = '.';
  std::optional<char> thousands_separator;

  // Throws DomainError when separators collide.
  void validate() const;
};

// Parses every row, collecting row-addressed problems into a single
// ParseError. Throws DuplicateKey when an (entity_id, year) pair repeats.
std::vector<FiscalRecord> parse_dataset(std::istream& in, const DatasetSchema& schema = {});

// Reads a file; throws IoError when it cannot be opened.
std::vector<FiscalRecord> load_dataset(const std::string& path, const DatasetSchema& schema = {});

// Writes the default five-column layout with round-trip precision amounts.
void write_dataset(std::ostream& out, std::span<const FiscalRecord> records,
                   const DatasetSchema& schema = {});

// Keeps records whose year lies in the window.
std::vector<FiscalRecord> restrict_to_window(std::span<const FiscalRecord> records,
                                             const YearWindow& window);

}  // namespace benford
