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

#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "benford/dataset.h"

namespace benford {

struct GroupKey {
  std::string region;
  int year = 0;

  friend auto operator<=>(const GroupKey&, const GroupKey&) = default;
};

struct EntityAmount {
  std::string entity_id;
  double amount = 0.0;
};

// Records partitioned by (region, year). Members of each group are sorted by
// entity id, so the panel does not depend on input order.
struct Panel {
  std::map<GroupKey, std::vector<EntityAmount>> groups;
  // Region of each entity in its latest reported year.
  std::map<std::string, std::string> entity_index;

  // nullptr when the group does not exist.
  const std::vector<EntityAmount>* find(const std::string& region, int year) const;
  // Throws MissingGroup.
  const std::vector<EntityAmount>& at(const std::string& region, int year) const;

  std::vector<std::string> regions() const;
  std::vector<int> years() const;
  // Number of groups' members in a year, over all regions.
  std::size_t entity_count(int year) const;
};

Panel build_panel(std::span<const FiscalRecord> records);

// Plain amounts of a group, in member order.
std::vector<double> amounts_of(const std::vector<EntityAmount>& members);

}  // namespace benford
