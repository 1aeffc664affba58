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

#include "benford/errors.h"

#include <utility>

#include <fmt/format.h>

namespace benford {

namespace {

std::string describe(const std::vector<RowError>& errors) {
  if (errors.empty()) {
    return "parse error";
  }
  const RowError& first = errors.front();
  std::string message = fmt::format("line {}, column '{}': {}", first.row,
                                    first.column, first.reason);
  if (errors.size() > 1) {
    message += fmt::format(" (and {} more)", errors.size() - 1);
  }
  return message;
}

}  // namespace

ParseError::ParseError(std::vector<RowError> errors)
    : Error(describe(errors)), errors_(std::move(errors)) {}

DuplicateKey::DuplicateKey(std::string entity_id, int year)
    : Error(fmt::format("duplicate record for entity '{}' in {}", entity_id, year)),
      entity_id_(std::move(entity_id)),
      year_(year) {}

UnknownEntity::UnknownEntity(std::string entity_id)
    : Error(fmt::format("remap references unknown entity '{}'", entity_id)),
      entity_id_(std::move(entity_id)) {}

MissingGroup::MissingGroup(std::string region, int year)
    : Error(fmt::format("no data for region '{}' in {}", region, year)),
      region_(std::move(region)),
      year_(year) {}

}  // namespace benford
