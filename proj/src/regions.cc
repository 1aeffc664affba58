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

#include "benford/regions.h"

#include <array>
#include <cctype>
#include <string>

namespace benford {

namespace {

constexpr std::array<RegionInfo, 20> kRegions = {{
    {"EMR", "Emilia-Romagna", Cluster::kNorth},
    {"FVG", "Friuli-Venezia Giulia", Cluster::kNorth},
    {"LIG", "Liguria", Cluster::kNorth},
    {"LOM", "Lombardia", Cluster::kNorth},
    {"PIE", "Piemonte", Cluster::kNorth},
    {"TAA", "Trentino-Alto Adige", Cluster::kNorth},
    {"VDA", "Valle d'Aosta", Cluster::kNorth},
    {"VEN", "Veneto", Cluster::kNorth},
    {"ABR", "Abruzzo", Cluster::kCenter},
    {"LAZ", "Lazio", Cluster::kCenter},
    {"MAR", "Marche", Cluster::kCenter},
    {"TOS", "Toscana", Cluster::kCenter},
    {"UMB", "Umbria", Cluster::kCenter},
    {"BAS", "Basilicata", Cluster::kSouth},
    {"CAL", "Calabria", Cluster::kSouth},
    {"CAM", "Campania", Cluster::kSouth},
    {"MOL", "Molise", Cluster::kSouth},
    {"PUG", "Puglia", Cluster::kSouth},
    {"SAR", "Sardegna", Cluster::kSouth},
    {"SIC", "Sicilia", Cluster::kSouth},
}};

// Spellings that do not reduce to the canonical name.
struct Alias {
  std::string_view alias;
  std::string_view code;
};

constexpr std::array<Alias, 8> kAliases = {{
    {"emromagna", "EMR"},
    {"friulivg", "FVG"},
    {"trentinoaa", "TAA"},
    {"trentinoaltoadige", "TAA"},
    {"trentinoadigealto", "TAA"},
    {"vdaosta", "VDA"},
    {"valledaosta", "VDA"},
    {"friuligiuliavenezia", "FVG"},
}};

std::string normalize(std::string_view s) {
  std::string out;
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      out += static_cast<char>(std::tolower(u));
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(Cluster cluster) {
  switch (cluster) {
    case Cluster::kNorth:
      return "N";
    case Cluster::kCenter:
      return "C";
    case Cluster::kSouth:
      return "S";
  }
  return "?";
}

std::span<const RegionInfo> italian_regions() { return kRegions; }

const RegionInfo* find_region(std::string_view code_or_name) {
  const std::string key = normalize(code_or_name);
  if (key.empty()) {
    return nullptr;
  }
  for (const auto& r : kRegions) {
    if (key == normalize(r.code) || key == normalize(r.name)) {
      return &r;
    }
  }
  for (const auto& a : kAliases) {
    if (key == a.alias) {
      return find_region(a.code);
    }
  }
  return nullptr;
}

std::optional<Cluster> cluster_of(std::string_view code_or_name) {
  const RegionInfo* r = find_region(code_or_name);
  if (r == nullptr) {
    return std::nullopt;
  }
  return r->cluster;
}

std::vector<const RegionInfo*> cluster_members(Cluster cluster) {
  std::vector<const RegionInfo*> out;
  for (const auto& r : kRegions) {
    if (r.cluster == cluster) {
      out.push_back(&r);
    }
  }
  return out;
}

}  // namespace benford
