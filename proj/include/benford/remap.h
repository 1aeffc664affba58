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

// Entity remapping. Municipal structures change over time: towns merge,
// get absorbed by a neighbour or move to another region. A RemapConfig
// projects the final structure onto every year of the panel so that each
// group keeps the same membership across the window.
//
// The config file is JSON; every section is optional:
//
//   {
//     "mergers": [
//       {"source_ids": ["A", "B"], "target_id": "AB", "target_name": "A con B"}
//     ],
//     "absorptions": [
//       {"source_id": "C", "absorbing_id": "D"}
//     ],
//     "region_moves": [
//       {"entity_id": "E", "from_region": "MAR", "to_region": "EMR", "effective_year": 2008}
//     ]
//   }
//
// Mergers sum their sources per year under the target (added to the
// target's own record when the target already reports that year).
// Absorptions add the source to the absorber. Region moves relabel the
// entity in every year, regardless of effective_year, which is kept for
// documentation.

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "benford/dataset.h"

namespace benford {

struct Merger {
  std::vector<std::string> source_ids;
  std::string target_id;
  std::string target_name;
};

struct Absorption {
  std::string source_id;
  std::string absorbing_id;
};

struct RegionMove {
  std::string entity_id;
  std::string from_region;
  std::string to_region;
  int effective_year = 0;
};

struct RemapConfig {
  std::vector<Merger> mergers;
  std::vector<Absorption> absorptions;
  std::vector<RegionMove> region_moves;

  bool empty() const { return mergers.empty() && absorptions.empty() && region_moves.empty(); }

  // Throws ConfigError when an entity is a source twice, a target or
  // absorber is also a source, or an entity is moved twice.
  void validate() const;
};

// Throws ConfigError on malformed JSON or schema violations.
RemapConfig parse_remap_config(std::istream& in);
RemapConfig load_remap_config(const std::string& path);

// Applies mergers, then absorptions, then region moves. Idempotent: entries
// whose sources are gone and whose target exists count as already applied.
// Output is sorted by (entity_id, year). Throws UnknownEntity when an entry
// names ids that are absent from the data.
std::vector<FiscalRecord> apply_remap(std::span<const FiscalRecord> records,
                                      const RemapConfig& config);

}  // namespace benford
