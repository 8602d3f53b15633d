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

// Minimal strict CSV helpers shared by the file readers and report writers.

#ifndef CDNROUTE_CSV_H_
#define CDNROUTE_CSV_H_

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace cdnroute::csv {

// One data row with its 1-based line number in the source.
struct Row {
  int line = 0;
  std::vector<std::string> fields;
};

// Reads all data rows. Blank lines and lines starting with '#' are skipped,
// as is a first non-comment line whose first field is not numeric (a header).
// Every row must have exactly `num_fields` fields, else FormatError.
std::vector<Row> ReadRows(std::istream& in, size_t num_fields);

double ParseDouble(const Row& row, size_t field, std::string_view name);
int64_t ParseInt(const Row& row, size_t field, std::string_view name);

// Shortest representation that parses back to the same double.
std::string FormatDouble(double value);

}  // namespace cdnroute::csv

#endif  // CDNROUTE_CSV_H_
