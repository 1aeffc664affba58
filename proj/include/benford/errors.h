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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace benford {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of an operation
// (nonpositive amount, sample size too small, inverted thresholds...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// No usable observations remain after exclusions.
class EmptyInput : public Error {
 public:
  using Error::Error;
};

struct RowError {
  std::size_t row = 0;  // 1-based physical line number, header is line 1
  std::string column;
  std::string reason;
};

// Aggregates every row-level problem found while parsing a dataset.
class ParseError : public Error {
 public:
  explicit ParseError(std::vector<RowError> errors);

  const std::vector<RowError>& errors() const { return errors_; }

 private:
  std::vector<RowError> errors_;
};

class DuplicateKey : public Error {
 public:
  DuplicateKey(std::string entity_id, int year);

  const std::string& entity_id() const { return entity_id_; }
  int year() const { return year_; }

 private:
  std::string entity_id_;
  int year_;
};

class UnknownEntity : public Error {
 public:
  explicit UnknownEntity(std::string entity_id);

  const std::string& entity_id() const { return entity_id_; }

 private:
  std::string entity_id_;
};

// A remap configuration violates its own invariants.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class MissingGroup : public Error {
 public:
  MissingGroup(std::string region, int year);

  const std::string& region() const { return region_; }
  int year() const { return year_; }

 private:
  std::string region_;
  int year_;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace benford
