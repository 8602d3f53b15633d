// Copyright 2026 The cdnroute Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cdnroute/csv.h"

#include <cctype>
#include <charconv>
#include <cmath>

#include "cdnroute/errors.h"

namespace cdnroute::csv {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> Split(std::string_view line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t comma = line.find(',', start);
    fields.emplace_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool LooksNumeric(std::string_view field) {
  if (field.empty()) return false;
  char c = field.front();
  return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' ||
         c == '.';
}

}  // namespace

std::vector<Row> ReadRows(std::istream& in, size_t num_fields) {
  std::vector<Row> rows;
  std::string line;
  int line_no = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = Trim(line);
    if (view.empty() || view.front() == '#') continue;
    std::vector<std::string> fields = Split(view);
    if (!seen_data && !LooksNumeric(fields.front())) {
      seen_data = true;
      continue;
    }
    seen_data = true;
    if (fields.size() != num_fields) {
      throw FormatError("expected " + std::to_string(num_fields) +
                            " fields, got " + std::to_string(fields.size()),
                        line_no);
    }
    rows.push_back(Row{line_no, std::move(fields)});
  }
  if (in.bad()) throw FormatError("read error");
  return rows;
}

double ParseDouble(const Row& row, size_t field, std::string_view name) {
  const std::string& text = row.fields[field];
  double value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || std::isnan(value)) {
    throw FormatError("bad number '" + text + "' for " + std::string(name),
                      row.line);
  }
  return value;
}

int64_t ParseInt(const Row& row, size_t field, std::string_view name) {
  const std::string& text = row.fields[field];
  int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw FormatError("bad integer '" + text + "' for " + std::string(name),
                      row.line);
  }
  return value;
}

std::string FormatDouble(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace cdnroute::csv
