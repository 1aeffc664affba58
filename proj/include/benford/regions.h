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

// The 20 Italian regions and their North / Center / South grouping.

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace benford {

enum class Cluster { kNorth, kCenter, kSouth };

// "N", "C" or "S".
std::string_view to_string(Cluster cluster);

struct RegionInfo {
  std::string_view code;  // three-letter code, e.g. "LOM"
  std::string_view name;
  Cluster cluster;
};

std::span<const RegionInfo> italian_regions();

// Matches a region by code or name. Case, spaces, dots, hyphens and
// apostrophes are ignored, so "Emilia-Romagna", "EM. ROMAGNA" and "emr" all
// resolve to the same region.
const RegionInfo* find_region(std::string_view code_or_name);

std::optional<Cluster> cluster_of(std::string_view code_or_name);

std::vector<const RegionInfo*> cluster_members(Cluster cluster);

}  // namespace benford
