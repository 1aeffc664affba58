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

#include "benford/remap.h"

#include <fstream>
#include <map>
#include <set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "benford/errors.h"
#include "benford/summation.h"

namespace benford {

namespace {

using json = nlohmann::json;

// entity id -> year -> record
using EntityYears = std::map<std::string, std::map<int, FiscalRecord>>;

std::string require_string(const json& node, const char* key, const char* section) {
  if (!node.is_object() || !node.contains(key) || !node.at(key).is_string()) {
    throw ConfigError(fmt::format("{} entry needs a string '{}'", section, key));
  }
  std::string value = node.at(key).get<std::string>();
  if (value.empty()) {
    throw ConfigError(fmt::format("{} entry has an empty '{}'", section, key));
  }
  return value;
}

const json& section_array(const json& root, const char* key) {
  static const json kEmpty = json::array();
  if (!root.contains(key)) {
    return kEmpty;
  }
  const json& node = root.at(key);
  if (!node.is_array()) {
    throw ConfigError(fmt::format("'{}' must be an array", key));
  }
  return node;
}

// Latest-year record of an entity that has at least one.
const FiscalRecord& latest(const std::map<int, FiscalRecord>& years) {
  return years.rbegin()->second;
}

void apply_merger(EntityYears& entities, const Merger& m) {
  std::vector<const std::string*> present;
  const std::string* missing = nullptr;
  for (const auto& id : m.source_ids) {
    if (entities.count(id) != 0) {
      present.push_back(&id);
    } else if (missing == nullptr) {
      missing = &id;
    }
  }
  const bool target_exists = entities.count(m.target_id) != 0;
  if (present.empty()) {
    if (target_exists) {
      return;  // already applied
    }
    throw UnknownEntity(m.source_ids.front());
  }
  if (missing != nullptr) {
    throw UnknownEntity(*missing);
  }

  std::string region;
  std::string name = m.target_name;
  if (target_exists) {
    const FiscalRecord& t = latest(entities.at(m.target_id));
    region = t.region_code;
    if (name.empty()) {
      name = t.entity_name;
    }
  } else {
    const FiscalRecord& s = latest(entities.at(*present.front()));
    region = s.region_code;
    if (name.empty()) {
      name = m.target_id;
    }
  }

  std::map<int, CompensatedSum> sums;
  if (target_exists) {
    for (const auto& [year, r] : entities.at(m.target_id)) {
      sums[year].add(r.amount);
    }
  }
  for (const std::string* id : present) {
    for (const auto& [year, r] : entities.at(*id)) {
      sums[year].add(r.amount);
    }
  }
  for (const std::string* id : present) {
    entities.erase(*id);
  }

  auto& target = entities[m.target_id];
  target.clear();
  for (const auto& [year, sum] : sums) {
    target[year] = FiscalRecord{m.target_id, name, region, year, sum.value()};
  }
}

void apply_absorption(EntityYears& entities, const Absorption& a) {
  const bool source_exists = entities.count(a.source_id) != 0;
  if (entities.count(a.absorbing_id) == 0) {
    throw UnknownEntity(a.absorbing_id);
  }
  if (!source_exists) {
    return;  // already applied
  }
  auto& absorber = entities.at(a.absorbing_id);
  const FiscalRecord reference = latest(absorber);
  for (const auto& [year, r] : entities.at(a.source_id)) {
    auto it = absorber.find(year);
    if (it == absorber.end()) {
      absorber[year] = FiscalRecord{reference.entity_id, reference.entity_name,
                                    reference.region_code, year, r.amount};
    } else {
      CompensatedSum sum;
      sum.add(it->second.amount);
      sum.add(r.amount);
      it->second.amount = sum.value();
    }
  }
  entities.erase(a.source_id);
}

void apply_region_move(EntityYears& entities, const RegionMove& move) {
  auto it = entities.find(move.entity_id);
  if (it == entities.end()) {
    throw UnknownEntity(move.entity_id);
  }
  bool matches = false;
  for (const auto& [year, r] : it->second) {
    matches = matches || r.region_code == move.from_region || r.region_code == move.to_region;
  }
  if (!matches) {
    throw ConfigError(fmt::format("entity '{}' is in neither '{}' nor '{}'", move.entity_id,
                                  move.from_region, move.to_region));
  }
  for (auto& [year, r] : it->second) {
    r.region_code = move.to_region;
  }
}

}  // namespace

void RemapConfig::validate() const {
  std::set<std::string> sources;
  auto add_source = [&](const std::string& id) {
    if (!sources.insert(id).second) {
      throw ConfigError(fmt::format("entity '{}' is a source in more than one remap entry", id));
    }
  };
  for (const auto& m : mergers) {
    if (m.source_ids.empty()) {
      throw ConfigError(fmt::format("merger into '{}' has no sources", m.target_id));
    }
    for (const auto& id : m.source_ids) {
      add_source(id);
    }
  }
  for (const auto& a : absorptions) {
    if (a.source_id == a.absorbing_id) {
      throw ConfigError(fmt::format("entity '{}' cannot absorb itself", a.source_id));
    }
    add_source(a.source_id);
  }
  for (const auto& m : mergers) {
    if (sources.count(m.target_id) != 0) {
      throw ConfigError(fmt::format("merger target '{}' is also a source", m.target_id));
    }
  }
  for (const auto& a : absorptions) {
    if (sources.count(a.absorbing_id) != 0) {
      throw ConfigError(fmt::format("absorbing entity '{}' is also a source", a.absorbing_id));
    }
  }
  std::set<std::string> moved;
  for (const auto& move : region_moves) {
    if (!moved.insert(move.entity_id).second) {
      throw ConfigError(fmt::format("entity '{}' is moved more than once", move.entity_id));
    }
  }
}

RemapConfig parse_remap_config(std::istream& in) {
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("remap config is not valid JSON: {}", e.what()));
  }
  if (!root.is_object()) {
    throw ConfigError("remap config must be a JSON object");
  }

  RemapConfig config;
  for (const auto& node : section_array(root, "mergers")) {
    Merger m;
    if (!node.is_object() || !node.contains("source_ids") || !node.at("source_ids").is_array()) {
      throw ConfigError("merger entry needs an array 'source_ids'");
    }
    for (const auto& id : node.at("source_ids")) {
      if (!id.is_string() || id.get<std::string>().empty()) {
        throw ConfigError("merger source ids must be nonempty strings");
      }
      m.source_ids.push_back(id.get<std::string>());
    }
    m.target_id = require_string(node, "target_id", "merger");
    if (node.contains("target_name")) {
      m.target_name = require_string(node, "target_name", "merger");
    }
    config.mergers.push_back(std::move(m));
  }
  for (const auto& node : section_array(root, "absorptions")) {
    config.absorptions.push_back({require_string(node, "source_id", "absorption"),
                                  require_string(node, "absorbing_id", "absorption")});
  }
  for (const auto& node : section_array(root, "region_moves")) {
    RegionMove move;
    move.entity_id = require_string(node, "entity_id", "region_moves");
    move.from_region = require_string(node, "from_region", "region_moves");
    move.to_region = require_string(node, "to_region", "region_moves");
    if (node.contains("effective_year")) {
      if (!node.at("effective_year").is_number_integer()) {
        throw ConfigError("region_moves 'effective_year' must be an integer");
      }
      move.effective_year = node.at("effective_year").get<int>();
    }
    config.region_moves.push_back(std::move(move));
  }
  config.validate();
  return config;
}

RemapConfig load_remap_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError(fmt::format("cannot open remap config '{}'", path));
  }
  return parse_remap_config(in);
}

std::vector<FiscalRecord> apply_remap(std::span<const FiscalRecord> records,
                                      const RemapConfig& config) {
  config.validate();
  EntityYears entities;
  for (const auto& r : records) {
    if (!entities[r.entity_id].emplace(r.year, r).second) {
      throw DuplicateKey(r.entity_id, r.year);
    }
  }
  for (const auto& m : config.mergers) {
    apply_merger(entities, m);
  }
  for (const auto& a : config.absorptions) {
    apply_absorption(entities, a);
  }
  for (const auto& move : config.region_moves) {
    apply_region_move(entities, move);
  }

  std::vector<FiscalRecord> out;
  out.reserve(records.size());
  for (auto& [id, years] : entities) {
    for (auto& [year, r] : years) {
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace benford
