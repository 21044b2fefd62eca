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

#include "cems/io/csv.hpp"

#include <fstream>
#include <sstream>

#include "cems/error.hpp"
#include "cems/format.hpp"

namespace cems::io {
namespace {

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string_view f = line.substr(start, comma == std::string_view::npos
                                                ? std::string_view::npos
                                                : comma - start);
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) {
      f.remove_prefix(1);
    }
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t')) {
      f.remove_suffix(1);
    }
    out.emplace_back(f);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void fail(const std::string& source, int line,
                       const std::string& msg) {
  throw InputError(source + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

int CsvTable::column(std::string_view name) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == name) return static_cast<int>(c);
  }
  fail(source, 1, "missing column '" + std::string(name) + "'");
}

double CsvTable::number(int row, int col) const {
  const std::string& f = rows[row][col];
  auto v = parse_double(f);
  if (!v) fail(source, line[row], "'" + f + "' is not a number");
  return *v;
}

int CsvTable::integer(int row, int col) const {
  const double v = number(row, col);
  if (v != static_cast<double>(static_cast<int>(v))) {
    fail(source, line[row], "'" + rows[row][col] + "' is not an integer");
  }
  return static_cast<int>(v);
}

CsvTable parse_csv(std::string_view text, const std::string& source) {
  CsvTable t;
  t.source = source;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto fields = split(line);
    if (t.header.empty()) {
      t.header = std::move(fields);
      continue;
    }
    if (fields.size() != t.header.size()) {
      fail(source, line_no,
           "expected " + std::to_string(t.header.size()) + " fields, got " +
               std::to_string(fields.size()));
    }
    t.rows.push_back(std::move(fields));
    t.line.push_back(line_no);
  }
  if (t.header.empty()) fail(source, 1, "empty file (no header)");
  return t;
}

std::vector<double> read_series_csv(std::string_view text,
                                    const std::string& source, int expected) {
  CsvTable t = parse_csv(text, source);
  const int ct = t.column("t"), cv = t.column("value");
  std::vector<double> out;
  for (int r = 0; r < static_cast<int>(t.rows.size()); ++r) {
    if (t.integer(r, ct) != r) {
      fail(source, t.line[r], "expected t = " + std::to_string(r));
    }
    out.push_back(t.number(r, cv));
  }
  if (expected >= 0 && static_cast<int>(out.size()) != expected) {
    fail(source, t.rows.empty() ? 1 : t.line.back(),
         "expected " + std::to_string(expected) + " values, got " +
             std::to_string(out.size()));
  }
  return out;
}

std::string write_series_csv(const std::vector<double>& v) {
  std::string out = "t,value\n";
  for (std::size_t t = 0; t < v.size(); ++t) {
    out += std::to_string(t) + "," + format_double(v[t]) + "\n";
  }
  return out;
}

std::vector<std::vector<double>> read_building_series_csv(
    std::string_view text, const std::string& source, int num_buildings,
    int expected) {
  CsvTable t = parse_csv(text, source);
  const int ct = t.column("t"), cb = t.column("b"), cv = t.column("value");
  std::vector<std::vector<double>> out(num_buildings);
  for (int r = 0; r < static_cast<int>(t.rows.size()); ++r) {
    const int b = t.integer(r, cb);
    if (b < 0 || b >= num_buildings) {
      fail(source, t.line[r], "building index " + std::to_string(b) +
                                  " out of range");
    }
    if (t.integer(r, ct) != static_cast<int>(out[b].size())) {
      fail(source, t.line[r],
           "expected t = " + std::to_string(out[b].size()) + " for b = " +
               std::to_string(b));
    }
    out[b].push_back(t.number(r, cv));
  }
  for (int b = 0; b < num_buildings; ++b) {
    if (static_cast<int>(out[b].size()) != expected) {
      fail(source, 1, "building " + std::to_string(b) + " has " +
                          std::to_string(out[b].size()) + " values, expected " +
                          std::to_string(expected));
    }
  }
  return out;
}

std::string write_building_series_csv(
    const std::vector<std::vector<double>>& by_building) {
  std::string out = "t,b,value\n";
  for (std::size_t b = 0; b < by_building.size(); ++b) {
    for (std::size_t t = 0; t < by_building[b].size(); ++t) {
      out += std::to_string(t) + "," + std::to_string(b) + "," +
             format_double(by_building[b][t]) + "\n";
    }
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(path + ": cannot open for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InputError(path + ": write failed");
}

}  // namespace cems::io
