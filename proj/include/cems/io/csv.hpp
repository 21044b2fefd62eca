// Copyright 2026 The CEMS Authors
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

// Minimal comma-separated text: a header row, then one record per line. No
// quoting; every field in this tool is a number or a bare identifier.

#ifndef CEMS_IO_CSV_HPP_
#define CEMS_IO_CSV_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace cems::io {

struct CsvTable {
  std::string source;  // file name used in error messages
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> line;  // 1-based source line of each row

  // Column index of `name`; throws InputError naming the source if absent.
  int column(std::string_view name) const;
  // Field parsed as a number / integer, errors cite source and line.
  double number(int row, int col) const;
  int integer(int row, int col) const;
};

// Throws InputError("<source>:<line>: ...") on an empty document or a
// record whose width differs from the header.
CsvTable parse_csv(std::string_view text, const std::string& source);

// "t,value" with t = 0..n-1 in order. `expected` < 0 accepts any length.
std::vector<double> read_series_csv(std::string_view text,
                                    const std::string& source,
                                    int expected = -1);
std::string write_series_csv(const std::vector<double>& v);

// "t,b,value" for per-building series; returns [b][t].
std::vector<std::vector<double>> read_building_series_csv(
    std::string_view text, const std::string& source, int num_buildings,
    int expected);
std::string write_building_series_csv(
    const std::vector<std::vector<double>>& by_building);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace cems::io

#endif  // CEMS_IO_CSV_HPP_
