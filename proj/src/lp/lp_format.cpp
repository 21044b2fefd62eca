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

#include "cems/lp/lp_format.hpp"

#include <sstream>
#include <unordered_map>
#include <vector>

#include "cems/error.hpp"
#include "cems/format.hpp"

namespace cems::lp {
namespace {

std::string var_label(const LinearProgram& lp, int j) {
  if (j < static_cast<int>(lp.var_names.size()) && !lp.var_names[j].empty()) {
    return lp.var_names[j];
  }
  return "x" + std::to_string(j);
}

std::string signed_number(double v) {
  std::string s = format_double(v);
  if (s.front() != '-') s.insert(s.begin(), '+');
  return s;
}

const char* sense_token(Sense s) {
  switch (s) {
    case Sense::kLe:
      return "<=";
    case Sense::kGe:
      return ">=";
    case Sense::kEq:
      return "=";
  }
  return "?";
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
           line[j] != '\r') {
      ++j;
    }
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::string write_lp_format(const MilpProblem& p) {
  const LinearProgram& lp = p.lp;
  std::ostringstream os;
  os << "\\ cems lp dump: " << lp.num_vars() << " vars, " << lp.num_rows()
     << " rows, " << p.binary_vars.size() << " binaries\n";
  os << "Minimize\n obj:";
  for (int j = 0; j < lp.num_vars(); ++j) {
    if (lp.objective[j] != 0.0) {
      os << ' ' << signed_number(lp.objective[j]) << ' ' << var_label(lp, j);
    }
  }
  os << "\nSubject To\n";
  for (int i = 0; i < lp.num_rows(); ++i) {
    const Row& r = lp.constraints[i];
    os << ' ' << (r.name.empty() ? "r" + std::to_string(i) : r.name) << ':';
    for (const Term& t : r.terms) {
      os << ' ' << signed_number(t.coef) << ' ' << var_label(lp, t.var);
    }
    os << ' ' << sense_token(r.sense) << ' ' << format_double(r.rhs) << '\n';
  }
  os << "Bounds\n";
  for (int j = 0; j < lp.num_vars(); ++j) {
    os << ' ' << format_double(lp.var_bounds[j].lower) << " <= "
       << var_label(lp, j) << " <= " << format_double(lp.var_bounds[j].upper)
       << '\n';
  }
  os << "Binaries\n";
  for (int j : p.binary_vars) os << ' ' << var_label(lp, j) << '\n';
  os << "End\n";
  return os.str();
}

MilpProblem read_lp_format(std::string_view text) {
  enum class Section { kNone, kObjective, kRows, kBounds, kBinaries, kEnd };
  Section section = Section::kNone;
  MilpProblem out;
  LinearProgram& lp = out.lp;

  // Bounds come last but define column order, so rows are resolved after.
  struct PendingTerm {
    std::string name;
    double coef;
  };
  std::vector<PendingTerm> objective;
  struct PendingRow {
    std::string name;
    std::vector<PendingTerm> terms;
    Sense sense;
    double rhs;
  };
  std::vector<PendingRow> rows;
  std::vector<std::string> binaries;
  std::unordered_map<std::string, int> index;

  int line_no = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw InputError("lp format line " + std::to_string(line_no) + ": " + msg);
  };
  auto number = [&](const std::string& tok) {
    auto v = parse_double(tok);
    if (!v) fail("bad number '" + tok + "'");
    return *v;
  };
  auto parse_terms = [&](const std::vector<std::string>& toks,
                         std::size_t from, std::size_t to) {
    std::vector<PendingTerm> terms;
    if ((to - from) % 2 != 0) fail("unpaired coefficient/variable");
    for (std::size_t k = from; k < to; k += 2) {
      terms.push_back({toks[k + 1], number(toks[k])});
    }
    return terms;
  };

  std::size_t start = 0;
  while (start <= text.size() && section != Section::kEnd) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '\\') {
      if (end == text.size()) break;
      continue;
    }
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (line.front() != ' ') {
      const std::string head = std::string(line.substr(0, line.find('\r')));
      if (head == "Minimize") {
        section = Section::kObjective;
      } else if (head == "Subject To") {
        section = Section::kRows;
      } else if (head == "Bounds") {
        section = Section::kBounds;
      } else if (head == "Binaries") {
        section = Section::kBinaries;
      } else if (head == "End") {
        section = Section::kEnd;
      } else {
        fail("unknown section '" + head + "'");
      }
      continue;
    }
    switch (section) {
      case Section::kObjective:
        if (toks[0] != "obj:") fail("expected 'obj:'");
        objective = parse_terms(toks, 1, toks.size());
        break;
      case Section::kRows: {
        if (toks.size() < 3 || toks[0].back() != ':') fail("malformed row");
        PendingRow r;
        r.name = toks[0].substr(0, toks[0].size() - 1);
        const std::string& s = toks[toks.size() - 2];
        if (s == "<=") {
          r.sense = Sense::kLe;
        } else if (s == ">=") {
          r.sense = Sense::kGe;
        } else if (s == "=") {
          r.sense = Sense::kEq;
        } else {
          fail("bad sense '" + s + "'");
        }
        r.rhs = number(toks.back());
        r.terms = parse_terms(toks, 1, toks.size() - 2);
        rows.push_back(std::move(r));
        break;
      }
      case Section::kBounds: {
        if (toks.size() != 5 || toks[1] != "<=" || toks[3] != "<=") {
          fail("malformed bound");
        }
        if (index.count(toks[2])) fail("duplicate variable '" + toks[2] + "'");
        index[toks[2]] = lp.add_var(toks[2], number(toks[0]), number(toks[4]));
        break;
      }
      case Section::kBinaries:
        binaries.push_back(toks[0]);
        break;
      default:
        fail("content outside a section");
    }
  }
  if (section != Section::kEnd) throw InputError("lp format: missing End");

  auto resolve = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) {
      throw InputError("lp format: undeclared variable '" + name + "'");
    }
    return it->second;
  };
  for (const auto& t : objective) lp.objective[resolve(t.name)] += t.coef;
  for (auto& r : rows) {
    std::vector<Term> terms;
    terms.reserve(r.terms.size());
    for (const auto& t : r.terms) terms.push_back({resolve(t.name), t.coef});
    lp.add_row(std::move(terms), r.sense, r.rhs, r.name);
  }
  for (const auto& b : binaries) out.binary_vars.push_back(resolve(b));
  return out;
}

}  // namespace cems::lp
