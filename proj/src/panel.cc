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

#include "benford/panel.h"

#include <algorithm>
#include <set>

#include "benford/errors.h"

namespace benford {

const std::vector<EntityAmount>* Panel::find(const std::string& region, int year) const {
  const auto it = groups.find(GroupKey{region, year});
  return it == groups.end() ? nullptr : &it->second;
}

const std::vector<EntityAmount>& Panel::at(const std::string& region, int year) const {
  const auto* members = find(region, year);
  if (members == nullptr || members->empty()) {
    throw MissingGroup(region, year);
  }
  return *members;
}

std::vector<std::string> Panel::regions() const {
  std::set<std::string> out;
  for (const auto& [key, members] : groups) {
    out.insert(key.region);
  }
  return {out.begin(), out.end()};
}

std::vector<int> Panel::years() const {
  std::set<int> out;
  for (const auto& [key, members] : groups) {
    out.insert(key.year);
  }
  return {out.begin(), out.end()};
}

std::size_t Panel::entity_count(int year) const {
  std::size_t total = 0;
  for (const auto& [key, members] : groups) {
    if (key.year == year) {
      total += members.size();
    }
  }
  return total;
}

Panel build_panel(std::span<const FiscalRecord> records) {
  Panel panel;
  std::map<std::string, int> latest_year;
  for (const auto& r : records) {
    panel.groups[GroupKey{r.region_code, r.year}].push_back({r.entity_id, r.amount});
    auto [it, inserted] = latest_year.emplace(r.entity_id, r.year);
    if (inserted || r.year >= it->second) {
      it->second = r.year;
      panel.entity_index[r.entity_id] = r.region_code;
    }
  }
  for (auto& [key, members] : panel.groups) {
    std::sort(members.begin(), members.end(),
              [](const EntityAmount& a, const EntityAmount& b) {
                return a.entity_id < b.entity_id;
              });
  }
  return panel;
}

std::vector<double> amounts_of(const std::vector<EntityAmount>& members) {
  std::vector<double> out;
  out.reserve(members.size());
  for (const auto& m : members) {
    out.push_back(m.amount);
  }
  return out;
}

}  // namespace benford
