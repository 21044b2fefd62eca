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

#include "cems/scenario/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "cems/error.hpp"
#include "cems/format.hpp"

namespace cems::scenario {
namespace {

double deviation_of(double g, double cs) {
  // Night steps carry no information about cloudiness.
  return cs > 0.0 ? g / cs - 1.0 : 0.0;
}

double clip_to_sky(double cs, double eps) {
  return std::clamp(cs * (1.0 + eps), 0.0, cs);
}

// Samples the future of one trajectory. `prior` is the deviation carried
// into step `from` before the AR(1) step; `stationary` starts from the
// marginal distribution instead.
void draw_path(std::mt19937_64& rng, const CovModel& cov, double rho,
               const std::vector<double>& cs, int from, double prior,
               bool stationary, std::vector<double>& out) {
  std::normal_distribution<double> unit(0.0, 1.0);
  const double innov = cov.marginal_std * std::sqrt(1.0 - rho * rho);
  double eps = prior;
  double resid = 0.0;
  for (int t = from; t < static_cast<int>(cs.size()); ++t) {
    const double xi = unit(rng);
    if (stationary && t == from) {
      resid = cov.marginal_std * xi;
    } else {
      resid = rho * resid + innov * xi;
      eps *= rho;
    }
    out[t] = clip_to_sky(cs[t], (stationary ? 0.0 : eps) + resid);
  }
}

void check_cov(const CovModel& cov) {
  if (!(cov.marginal_std >= 0.0) || !(cov.corr_length_hours > 0.0)) {
    throw InputError("scenario covariance needs std >= 0 and length > 0");
  }
}

}  // namespace

double step_correlation(const CovModel& cov, double step_hours) {
  return std::exp(-step_hours / cov.corr_length_hours);
}

ScenarioSet generate_day_ahead(const ExogenousData& exo, const CovModel& cov,
                               int num_scenarios, double step_hours) {
  if (num_scenarios < 1) throw InputError("scenario count must be >= 1");
  check_cov(cov);
  ScenarioSet set;
  set.clear_sky = exo.clear_sky_irr;
  set.conditional_mean = exo.clear_sky_irr;
  set.weights.assign(num_scenarios, 1.0 / num_scenarios);
  const double rho = step_correlation(cov, step_hours);
  std::mt19937_64 rng(cov.seed);
  for (int s = 0; s < num_scenarios; ++s) {
    std::vector<double> g(set.clear_sky.size(), 0.0);
    draw_path(rng, cov, rho, set.clear_sky, 0, 0.0, true, g);
    set.irradiance.push_back(std::move(g));
  }
  return set;
}

int most_probable_index(const ScenarioSet& set) {
  const int n = set.num_scenarios();
  if (n == 0) throw InputError("empty scenario set");
  const double wmax = *std::max_element(set.weights.begin(),
                                        set.weights.end());
  std::vector<double> mean(set.horizon(), 0.0);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < set.horizon(); ++t) {
      mean[t] += set.weights[s] * set.irradiance[s][t];
    }
  }
  int best = -1;
  double best_dist = 0.0;
  for (int s = 0; s < n; ++s) {
    if (set.weights[s] != wmax) continue;
    double d = 0.0;
    for (int t = 0; t < set.horizon(); ++t) {
      const double e = set.irradiance[s][t] - mean[t];
      d += e * e;
    }
    if (best < 0 || d < best_dist) {
      best = s;
      best_dist = d;
    }
  }
  return best;
}

std::vector<double> most_probable(const ScenarioSet& set) {
  return set.irradiance[most_probable_index(set)];
}

ScenarioSet update_hourly(const ScenarioSet& set, const CovModel& cov, int k,
                          const std::vector<double>& observed,
                          double step_hours) {
  check_cov(cov);
  const int horizon = set.horizon();
  if (k < 0 || k > horizon) {
    throw InputError("update step " + std::to_string(k) +
                     " outside horizon " + std::to_string(horizon));
  }
  if (static_cast<int>(observed.size()) < k) {
    throw InputError("observations cover fewer than k steps");
  }
  if (set.num_scenarios() < 1) throw InputError("empty scenario set");
  if (k == 0) {
    ExogenousData exo;
    exo.clear_sky_irr = set.clear_sky;
    return generate_day_ahead(exo, cov, set.num_scenarios(), step_hours);
  }

  const std::vector<double>& cs = set.clear_sky;
  const double rho = step_correlation(cov, step_hours);
  const double last = deviation_of(observed[k - 1], cs[k - 1]);

  ScenarioSet out;
  out.clear_sky = cs;
  out.anchor_step = k;
  out.weights.assign(set.num_scenarios(), 1.0 / set.num_scenarios());
  out.conditional_mean.assign(horizon, 0.0);
  double decay = 1.0;
  for (int t = 0; t < horizon; ++t) {
    if (t < k) {
      out.conditional_mean[t] = observed[t];
    } else {
      decay *= rho;
      out.conditional_mean[t] = cs[t] * (1.0 + last * decay);
    }
  }

  std::seed_seq seq{static_cast<std::uint32_t>(cov.seed),
                    static_cast<std::uint32_t>(cov.seed >> 32),
                    static_cast<std::uint32_t>(k)};
  std::mt19937_64 rng(seq);
  for (int s = 0; s < set.num_scenarios(); ++s) {
    std::vector<double> g(horizon, 0.0);
    std::copy(observed.begin(), observed.begin() + k, g.begin());
    draw_path(rng, cov, rho, cs, k, last, false, g);
    out.irradiance.push_back(std::move(g));
  }
  return out;
}

std::string write_scenarios_csv(const ScenarioSet& set) {
  std::string out = "t,s,irradiance_wm2\n";
  for (int t = 0; t < set.horizon(); ++t) {
    for (int s = 0; s < set.num_scenarios(); ++s) {
      out += std::to_string(t) + "," + std::to_string(s) + "," +
             format_double(set.irradiance[s][t]) + "\n";
    }
  }
  return out;
}

ScenarioSet read_scenarios_csv(std::string_view text,
                               const std::vector<double>& clear_sky) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw InputError("scenario csv line " + std::to_string(lineno) + ": " +
                     what);
  };
  const int horizon = static_cast<int>(clear_sky.size());
  std::vector<std::vector<double>> rows;  // [s][t], NaN until seen
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1) {
      if (line != "t,s,irradiance_wm2") fail("expected header");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    if (cells.size() != 3) fail("expected 3 fields");
    auto t = parse_double(cells[0]);
    auto s = parse_double(cells[1]);
    auto g = parse_double(cells[2]);
    if (!t || !s || !g) fail("malformed number");
    const int ti = static_cast<int>(*t);
    const int si = static_cast<int>(*s);
    if (ti != *t || si != *s || ti < 0 || si < 0 || ti >= horizon ||
        si > 1000000) {
      fail("bad index");
    }
    if (!(*g >= 0.0) || *g > clear_sky[ti]) fail("irradiance out of range");
    if (si >= static_cast<int>(rows.size())) {
      rows.resize(si + 1, std::vector<double>(horizon, NAN));
    }
    if (!std::isnan(rows[si][ti])) fail("duplicate entry");
    rows[si][ti] = *g;
  }
  if (lineno == 0) throw InputError("scenario csv: missing header");
  if (rows.empty()) throw InputError("scenario csv: no scenarios");
  for (const auto& r : rows) {
    for (double v : r) {
      if (std::isnan(v)) throw InputError("scenario csv: missing entries");
    }
  }
  ScenarioSet set;
  set.clear_sky = clear_sky;
  set.conditional_mean = clear_sky;
  set.irradiance = std::move(rows);
  set.weights.assign(set.irradiance.size(), 1.0 / set.irradiance.size());
  return set;
}

}  // namespace cems::scenario
