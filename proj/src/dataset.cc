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

#include "benford/dataset.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "benford/errors.h"

namespace benford {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_int(std::string_view text, int& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && !text.empty();
}

// A logical record: one physical line, or several when a quoted field
// contains a line break.
class RecordReader {
 public:
  RecordReader(std::istream& in, char delimiter) : in_(in), delimiter_(delimiter) {}

  // Returns false at end of input. `line` is the physical line the record starts on.
  bool next(std::vector<std::string>& fields, std::size_t& line, std::string& error) {
    std::string text;
    if (!std::getline(in_, text)) {
      return false;
    }
    ++line_;
    line = line_;
    if (line_ == 1 && text.rfind("\xEF\xBB\xBF", 0) == 0) {
      text.erase(0, 3);
    }
    fields.clear();
    error.clear();
    std::string field;
    bool quoted = false;
    std::size_t i = 0;
    while (true) {
      if (i == text.size()) {
        if (!quoted) {
          break;
        }
        std::string more;
        if (!std::getline(in_, more)) {
          error = "unterminated quoted field";
          break;
        }
        ++line_;
        field += '\n';
        text = std::move(more);
        i = 0;
        continue;
      }
      const char c = text[i];
      if (quoted) {
        if (c == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            field += '"';
            ++i;
          } else {
            quoted = false;
          }
        } else {
          field += c;
        }
      } else if (c == '"' && trim(field).empty()) {
        field.clear();
        quoted = true;
      } else if (c == delimiter_) {
        fields.push_back(std::move(field));
        field.clear();
      } else if (c != '\r' || i + 1 != text.size()) {
        field += c;
      }
      ++i;
    }
    fields.push_back(std::move(field));
    return true;
  }

 private:
  std::istream& in_;
  char delimiter_;
  std::size_t line_ = 0;
};

bool is_blank(const std::vector<std::string>& fields) {
  return std::all_of(fields.begin(), fields.end(),
                     [](const std::string& f) { return trim(f).empty(); });
}

std::optional<std::string> parse_amount(std::string_view raw, const DatasetSchema& schema,
                                        double& out) {
  const std::string_view text = trim(raw);
  if (text.empty()) {
    return "empty amount";
  }
  std::string normalized;
  normalized.reserve(text.size());
  for (char c : text) {
    if (schema.thousands_separator && c == *schema.thousands_separator) {
      continue;
    }
    normalized += (c == schema.decimal_separator) ? '.' : c;
  }
  std::string_view digits = normalized;
  if (!digits.empty() && digits.front() == '+') {
    digits.remove_prefix(1);
  }
  const auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), out);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
    return fmt::format("'{}' is not a decimal amount", text);
  }
  if (!std::isfinite(out)) {
    return fmt::format("amount '{}' is not finite", text);
  }
  if (out < 0.0) {
    return fmt::format("amount '{}' is negative", text);
  }
  return std::nullopt;
}

bool needs_quotes(std::string_view field, char delimiter) {
  return field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) != std::string_view::npos;
}

void write_field(std::ostream& out, std::string_view field, char delimiter) {
  if (!needs_quotes(field, delimiter)) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') {
      out << '"';
    }
    out << c;
  }
  out << '"';
}

}  // namespace

YearWindow YearWindow::parse(std::string_view text) {
  YearWindow window;
  const auto colon = text.find(':');
  bool ok = false;
  if (colon == std::string_view::npos) {
    ok = parse_int(text, window.first);
    window.last = window.first;
  } else {
    ok = parse_int(text.substr(0, colon), window.first) &&
         parse_int(text.substr(colon + 1), window.last);
  }
  if (!ok) {
    throw DomainError(fmt::format("cannot parse year range '{}' (expected FIRST:LAST)", text));
  }
  if (window.last < window.first) {
    throw DomainError(fmt::format("empty year range '{}'", text));
  }
  return window;
}

std::vector<int> YearWindow::years() const {
  std::vector<int> out;
  for (int y = first; y <= last; ++y) {
    out.push_back(y);
  }
  return out;
}

void DatasetSchema::validate() const {
  if (delimiter == decimal_separator) {
    throw DomainError("field delimiter and decimal separator must differ");
  }
  if (thousands_separator &&
      (*thousands_separator == decimal_separator || *thousands_separator == delimiter)) {
    throw DomainError("thousands separator collides with another separator");
  }
}

std::vector<FiscalRecord> parse_dataset(std::istream& in, const DatasetSchema& schema) {
  schema.validate();
  RecordReader reader(in, schema.delimiter);
  std::vector<std::string> fields;
  std::size_t line = 0;
  std::string record_error;

  if (!reader.next(fields, line, record_error)) {
    throw ParseError({{1, "", "missing header row"}});
  }

  const std::array<const std::string*, 5> wanted = {
      &schema.entity_id_column, &schema.entity_name_column, &schema.region_column,
      &schema.year_column, &schema.amount_column};
  std::array<std::size_t, 5> column{};
  std::vector<RowError> errors;
  for (std::size_t k = 0; k < wanted.size(); ++k) {
    const auto it = std::find_if(fields.begin(), fields.end(), [&](const std::string& h) {
      return trim(h) == *wanted[k];
    });
    if (it == fields.end()) {
      errors.push_back({line, *wanted[k], "column missing from header"});
    } else {
      column[k] = static_cast<std::size_t>(it - fields.begin());
    }
  }
  if (!errors.empty()) {
    throw ParseError(std::move(errors));
  }
  const std::size_t width = *std::max_element(column.begin(), column.end()) + 1;

  std::vector<FiscalRecord> records;
  std::map<std::pair<std::string, int>, std::size_t> seen;
  std::optional<std::pair<std::string, int>> duplicate;

  while (reader.next(fields, line, record_error)) {
    if (!record_error.empty()) {
      errors.push_back({line, "", record_error});
      continue;
    }
    if (is_blank(fields)) {
      continue;
    }
    if (fields.size() < width) {
      errors.push_back({line, "", fmt::format("expected at least {} fields, found {}", width,
                                              fields.size())});
      continue;
    }
    FiscalRecord r;
    r.entity_id = std::string(trim(fields[column[0]]));
    r.entity_name = std::string(trim(fields[column[1]]));
    r.region_code = std::string(trim(fields[column[2]]));
    bool ok = true;
    if (r.entity_id.empty()) {
      errors.push_back({line, schema.entity_id_column, "empty entity id"});
      ok = false;
    }
    if (r.region_code.empty()) {
      errors.push_back({line, schema.region_column, "empty region code"});
      ok = false;
    }
    if (!parse_int(fields[column[3]], r.year)) {
      errors.push_back({line, schema.year_column,
                        fmt::format("'{}' is not a year", trim(fields[column[3]]))});
      ok = false;
    }
    if (auto problem = parse_amount(fields[column[4]], schema, r.amount)) {
      errors.push_back({line, schema.amount_column, *problem});
      ok = false;
    }
    if (!ok) {
      continue;
    }
    auto key = std::make_pair(r.entity_id, r.year);
    if (!seen.emplace(key, line).second && !duplicate) {
      duplicate = std::move(key);
    }
    records.push_back(std::move(r));
  }

  if (!errors.empty()) {
    throw ParseError(std::move(errors));
  }
  if (duplicate) {
    throw DuplicateKey(duplicate->first, duplicate->second);
  }
  return records;
}

std::vector<FiscalRecord> load_dataset(const std::string& path, const DatasetSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError(fmt::format("cannot open dataset '{}'", path));
  }
  return parse_dataset(in, schema);
}

void write_dataset(std::ostream& out, std::span<const FiscalRecord> records,
                   const DatasetSchema& schema) {
  const char d = schema.delimiter;
  out << schema.entity_id_column << d << schema.entity_name_column << d << schema.region_column
      << d << schema.year_column << d << schema.amount_column << '\n';
  for (const auto& r : records) {
    write_field(out, r.entity_id, d);
    out << d;
    write_field(out, r.entity_name, d);
    out << d;
    write_field(out, r.region_code, d);
    out << d << r.year << d;
    std::string amount = fmt::format("{}", r.amount);
    if (schema.decimal_separator != '.') {
      std::replace(amount.begin(), amount.end(), '.', schema.decimal_separator);
    }
    write_field(out, amount, d);
    out << '\n';
  }
}

std::vector<FiscalRecord> restrict_to_window(std::span<const FiscalRecord> records,
                                             const YearWindow& window) {
  std::vector<FiscalRecord> out;
  for (const auto& r : records) {
    if (window.contains(r.year)) {
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace benford
