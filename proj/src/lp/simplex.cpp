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

#include "cems/lp/simplex.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "cems/error.hpp"

namespace cems::lp {

const char* to_string(Status s) {
  switch (s) {
    case Status::kOptimal:
      return "optimal";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

constexpr int kRefactorInterval = 64;
constexpr double kPivotTol = 1e-9;
constexpr double kDegenerateStep = 1e-12;

// Nearest power of two to 1/v, so scaling never perturbs mantissas.
double pow2_reciprocal(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) return 1.0;
  return std::ldexp(1.0, -static_cast<int>(std::lround(std::log2(v))));
}

}  // namespace

class SimplexSolver::Impl {
 public:
  Impl(const LinearProgram& lp, const FeasTolerances& tol);

  void set_var_bounds(int j, double lo, double hi) {
    lb_[j] = lo / col_scale_[j];
    ub_[j] = hi / col_scale_[j];
  }
  Bounds var_bounds(int j) const {
    return {lb_[j] * col_scale_[j], ub_[j] * col_scale_[j]};
  }

  Solution solve(const Basis* warm);

 private:
  struct Eta {
    int row;
    double pivot;
    std::vector<int> index;
    std::vector<double> value;
  };

  bool is_logical(int j) const { return j >= n_; }
  double dot_column(int j, const std::vector<double>& y) const;
  void load_column(int j, std::vector<double>& dense) const;

  void init_basis(const Basis* warm);
  void slack_basis();
  double nonbasic_value(int j, VarStatus s) const;
  bool refactor();
  void compute_basics();
  void ftran(std::vector<double>& v) const;
  void btran(std::vector<double>& v) const;
  bool basic_infeasible(int r) const;

  // Problem, scaled.
  int m_ = 0;
  int n_ = 0;
  int total_ = 0;
  std::vector<int> col_start_;
  std::vector<int> row_index_;
  std::vector<double> col_value_;
  std::vector<double> row_scale_;
  std::vector<double> col_scale_;  // structurals then 1/row_scale for rows
  std::vector<double> cost_;
  std::vector<double> lb_;
  std::vector<double> ub_;
  std::vector<double> orig_cost_;
  FeasTolerances tol_;
  long iteration_limit_ = 0;

  // Iterate.
  std::vector<double> x_;
  std::vector<int> head_;
  std::vector<int> pos_;
  std::vector<VarStatus> status_;
  mutable Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<Eta> etas_;
};

SimplexSolver::Impl::Impl(const LinearProgram& lp, const FeasTolerances& tol)
    : m_(lp.num_rows()), n_(lp.num_vars()), total_(lp.num_vars() +
                                                   lp.num_rows()),
      tol_(tol) {
  if (auto errs = lp.structural_errors(); !errs.empty()) {
    throw InputError("LinearProgram: " + errs.front());
  }
  iteration_limit_ = tol.iteration_limit > 0 ? tol.iteration_limit
                                             : 50L * (n_ + m_) + 100;

  // Row-wise then column-wise max-norm equilibration.
  std::vector<double> row_max(m_, 0.0);
  for (int i = 0; i < m_; ++i) {
    for (const Term& t : lp.constraints[i].terms) {
      row_max[i] = std::max(row_max[i], std::abs(t.coef));
    }
  }
  row_scale_.resize(m_);
  for (int i = 0; i < m_; ++i) row_scale_[i] = pow2_reciprocal(row_max[i]);

  // Merge duplicate (row, col) entries while building CSC.
  std::vector<std::vector<std::pair<int, double>>> cols(n_);
  for (int i = 0; i < m_; ++i) {
    for (const Term& t : lp.constraints[i].terms) {
      if (t.coef == 0.0) continue;
      auto& c = cols[t.var];
      if (!c.empty() && c.back().first == i) {
        c.back().second += t.coef;
      } else {
        c.emplace_back(i, t.coef);
      }
    }
  }
  col_scale_.assign(total_, 1.0);
  col_start_.assign(n_ + 1, 0);
  for (int j = 0; j < n_; ++j) {
    double cmax = 0.0;
    for (auto [i, v] : cols[j]) cmax = std::max(cmax, std::abs(v * row_scale_[i]));
    col_scale_[j] = pow2_reciprocal(cmax);
    for (auto [i, v] : cols[j]) {
      if (v == 0.0) continue;
      row_index_.push_back(i);
      col_value_.push_back(v * row_scale_[i] * col_scale_[j]);
    }
    col_start_[j + 1] = static_cast<int>(row_index_.size());
  }

  cost_.assign(total_, 0.0);
  orig_cost_ = lp.objective;
  double cmax = 0.0;
  for (int j = 0; j < n_; ++j) {
    cmax = std::max(cmax, std::abs(lp.objective[j] * col_scale_[j]));
  }
  const double obj_scale = pow2_reciprocal(cmax);
  for (int j = 0; j < n_; ++j) {
    cost_[j] = lp.objective[j] * col_scale_[j] * obj_scale;
  }

  lb_.resize(total_);
  ub_.resize(total_);
  for (int j = 0; j < n_; ++j) {
    lb_[j] = lp.var_bounds[j].lower / col_scale_[j];
    ub_[j] = lp.var_bounds[j].upper / col_scale_[j];
  }
  for (int i = 0; i < m_; ++i) {
    const Row& r = lp.constraints[i];
    const double rhs = r.rhs * row_scale_[i];
    const int j = n_ + i;
    col_scale_[j] = 1.0 / row_scale_[i];
    lb_[j] = (r.sense == Sense::kLe) ? -kInf : rhs;
    ub_[j] = (r.sense == Sense::kGe) ? kInf : rhs;
  }
}

double SimplexSolver::Impl::dot_column(int j,
                                       const std::vector<double>& y) const {
  if (is_logical(j)) return -y[j - n_];
  double s = 0.0;
  for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
    s += col_value_[k] * y[row_index_[k]];
  }
  return s;
}

void SimplexSolver::Impl::load_column(int j, std::vector<double>& dense) const {
  std::fill(dense.begin(), dense.end(), 0.0);
  if (is_logical(j)) {
    dense[j - n_] = -1.0;
    return;
  }
  for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
    dense[row_index_[k]] = col_value_[k];
  }
}

double SimplexSolver::Impl::nonbasic_value(int j, VarStatus s) const {
  switch (s) {
    case VarStatus::kAtLower:
      return lb_[j];
    case VarStatus::kAtUpper:
      return ub_[j];
    default:
      return 0.0;
  }
}

// Status consistent with the current bounds of j.
static VarStatus fit_status(VarStatus want, double lb, double ub) {
  if (want == VarStatus::kAtUpper && std::isfinite(ub)) return want;
  if (want == VarStatus::kAtLower && std::isfinite(lb)) return want;
  if (std::isfinite(lb)) return VarStatus::kAtLower;
  if (std::isfinite(ub)) return VarStatus::kAtUpper;
  return VarStatus::kFree;
}

void SimplexSolver::Impl::slack_basis() {
  status_.assign(total_, VarStatus::kAtLower);
  head_.assign(m_, -1);
  pos_.assign(total_, -1);
  for (int j = 0; j < n_; ++j) {
    status_[j] = fit_status(VarStatus::kAtLower, lb_[j], ub_[j]);
  }
  for (int i = 0; i < m_; ++i) {
    status_[n_ + i] = VarStatus::kBasic;
    head_[i] = n_ + i;
    pos_[n_ + i] = i;
  }
  x_.assign(total_, 0.0);
  for (int j = 0; j < total_; ++j) {
    if (status_[j] != VarStatus::kBasic) x_[j] = nonbasic_value(j, status_[j]);
  }
}

void SimplexSolver::Impl::init_basis(const Basis* warm) {
  etas_.clear();
  if (warm == nullptr || static_cast<int>(warm->status.size()) != total_ ||
      std::count(warm->status.begin(), warm->status.end(),
                 VarStatus::kBasic) != m_) {
    slack_basis();
    return;
  }
  status_ = warm->status;
  head_.clear();
  pos_.assign(total_, -1);
  x_.assign(total_, 0.0);
  for (int j = 0; j < total_; ++j) {
    if (status_[j] == VarStatus::kBasic) {
      pos_[j] = static_cast<int>(head_.size());
      head_.push_back(j);
    } else {
      status_[j] = fit_status(status_[j], lb_[j], ub_[j]);
      x_[j] = nonbasic_value(j, status_[j]);
    }
  }
}

bool SimplexSolver::Impl::refactor() {
  etas_.clear();
  if (m_ == 0) return true;
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(m_) * 3);
  for (int r = 0; r < m_; ++r) {
    const int j = head_[r];
    if (is_logical(j)) {
      trips.emplace_back(j - n_, r, -1.0);
    } else {
      for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
        trips.emplace_back(row_index_[k], r, col_value_[k]);
      }
    }
  }
  Eigen::SparseMatrix<double> B(m_, m_);
  B.setFromTriplets(trips.begin(), trips.end());
  B.makeCompressed();
  lu_.analyzePattern(B);
  lu_.factorize(B);
  return lu_.info() == Eigen::Success;
}

void SimplexSolver::Impl::ftran(std::vector<double>& v) const {
  if (m_ == 0) return;
  Eigen::Map<Eigen::VectorXd> vm(v.data(), m_);
  Eigen::VectorXd sol = lu_.solve(vm);
  vm = sol;
  for (const Eta& e : etas_) {
    const double xr = v[e.row] / e.pivot;
    if (xr != 0.0) {
      for (std::size_t k = 0; k < e.index.size(); ++k) {
        v[e.index[k]] -= e.value[k] * xr;
      }
    }
    v[e.row] = xr;
  }
}

void SimplexSolver::Impl::btran(std::vector<double>& v) const {
  if (m_ == 0) return;
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double s = v[it->row];
    for (std::size_t k = 0; k < it->index.size(); ++k) {
      s -= it->value[k] * v[it->index[k]];
    }
    v[it->row] = s / it->pivot;
  }
  Eigen::Map<Eigen::VectorXd> vm(v.data(), m_);
  Eigen::VectorXd sol = lu_.transpose().solve(vm);
  vm = sol;
}

void SimplexSolver::Impl::compute_basics() {
  if (m_ == 0) return;
  std::vector<double> rhs(m_, 0.0);
  for (int j = 0; j < total_; ++j) {
    if (status_[j] == VarStatus::kBasic || x_[j] == 0.0) continue;
    if (is_logical(j)) {
      rhs[j - n_] += x_[j];
    } else {
      for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
        rhs[row_index_[k]] -= col_value_[k] * x_[j];
      }
    }
  }
  ftran(rhs);
  for (int r = 0; r < m_; ++r) x_[head_[r]] = rhs[r];
}

bool SimplexSolver::Impl::basic_infeasible(int r) const {
  const int j = head_[r];
  return x_[j] < lb_[j] - tol_.feasibility || x_[j] > ub_[j] + tol_.feasibility;
}

Solution SimplexSolver::Impl::solve(const Basis* warm) {
  init_basis(warm);
  int repairs = 0;
  auto factor_or_repair = [&]() {
    bool ok = refactor();
    if (ok) {
      compute_basics();
      for (int r = 0; r < m_ && ok; ++r) ok = std::isfinite(x_[head_[r]]);
    }
    if (!ok) {
      if (++repairs > 5) throw ResourceError("simplex: basis repair failed");
      slack_basis();
      refactor();
      compute_basics();
    }
  };
  factor_or_repair();

  std::vector<double> cb(m_), y(m_), alpha(m_);
  long iterations = 0;
  int since_refactor = 0;
  int degenerate_run = 0;
  bool bland = false;
  Status status = Status::kOptimal;
  const double ftol = tol_.feasibility;
  const double harris = 0.5 * ftol;

  for (;;) {
    if (iterations >= iteration_limit_) {
      std::ostringstream os;
      os << "simplex: iteration limit " << iteration_limit_ << " exceeded";
      throw ResourceError(os.str());
    }
    if (since_refactor >= kRefactorInterval) {
      factor_or_repair();
      since_refactor = 0;
    }

    bool phase1 = false;
    for (int r = 0; r < m_; ++r) {
      if (basic_infeasible(r)) {
        phase1 = true;
        break;
      }
    }
    for (int r = 0; r < m_; ++r) {
      const int j = head_[r];
      if (phase1) {
        cb[r] = x_[j] < lb_[j] - ftol ? -1.0 : (x_[j] > ub_[j] + ftol ? 1.0
                                                                     : 0.0);
      } else {
        cb[r] = cost_[j];
      }
    }
    y = cb;
    btran(y);

    // Pricing: Dantzig, or Bland (lowest index) during degenerate stalls.
    int q = -1;
    double best = 0.0;
    int dir = 0;
    for (int j = 0; j < total_; ++j) {
      const VarStatus s = status_[j];
      if (s == VarStatus::kBasic || lb_[j] == ub_[j]) continue;
      const double d = (phase1 ? 0.0 : cost_[j]) - dot_column(j, y);
      int jd = 0;
      if (s == VarStatus::kAtLower && d < -tol_.optimality) {
        jd = 1;
      } else if (s == VarStatus::kAtUpper && d > tol_.optimality) {
        jd = -1;
      } else if (s == VarStatus::kFree && std::abs(d) > tol_.optimality) {
        jd = d < 0.0 ? 1 : -1;
      }
      if (jd == 0) continue;
      if (bland) {
        q = j;
        dir = jd;
        break;
      }
      if (std::abs(d) > best) {
        best = std::abs(d);
        q = j;
        dir = jd;
      }
    }

    if (q < 0) {
      if (since_refactor > 0) {
        factor_or_repair();
        since_refactor = 0;
        continue;
      }
      status = phase1 ? Status::kInfeasible : Status::kOptimal;
      break;
    }

    load_column(q, alpha);
    ftran(alpha);

    // Ratio test. rate[r] is the change of basic r per unit step.
    auto eff_lower = [&](int r) {
      const int j = head_[r];
      if (phase1 && x_[j] < lb_[j] - ftol) return -kInf;
      if (phase1 && x_[j] > ub_[j] + ftol) return ub_[j];
      return lb_[j];
    };
    auto eff_upper = [&](int r) {
      const int j = head_[r];
      if (phase1 && x_[j] > ub_[j] + ftol) return kInf;
      if (phase1 && x_[j] < lb_[j] - ftol) return lb_[j];
      return ub_[j];
    };
    auto limit = [&](int r, double relax) {
      const double rate = -dir * alpha[r];
      const double x = x_[head_[r]];
      if (rate < 0.0) {
        const double lo = eff_lower(r);
        if (!std::isfinite(lo)) return kInf;
        return (x - (lo - relax)) / -rate;
      }
      const double hi = eff_upper(r);
      if (!std::isfinite(hi)) return kInf;
      return ((hi + relax) - x) / rate;
    };

    int leave = -1;
    double theta = kInf;
    if (bland) {
      for (int r = 0; r < m_; ++r) {
        if (std::abs(alpha[r]) <= kPivotTol) continue;
        const double lim = std::max(0.0, limit(r, 0.0));
        if (!std::isfinite(lim)) continue;
        if (leave < 0 || lim < theta - kDegenerateStep) {
          leave = r;
          theta = lim;
        } else if (lim <= theta + kDegenerateStep && head_[r] < head_[leave]) {
          leave = r;
          theta = std::min(theta, lim);
        }
      }
    } else {
      double theta_max = kInf;
      for (int r = 0; r < m_; ++r) {
        if (std::abs(alpha[r]) <= kPivotTol) continue;
        theta_max = std::min(theta_max, limit(r, harris));
      }
      if (std::isfinite(theta_max)) {
        double best_pivot = 0.0;
        for (int r = 0; r < m_; ++r) {
          if (std::abs(alpha[r]) <= kPivotTol) continue;
          const double lim = limit(r, 0.0);
          if (lim <= theta_max && std::abs(alpha[r]) > best_pivot) {
            best_pivot = std::abs(alpha[r]);
            leave = r;
            theta = std::max(0.0, lim);
          }
        }
      }
    }

    const double range = ub_[q] - lb_[q];
    const bool flip = std::isfinite(range) && range <= theta;
    if (leave < 0 && !flip) {
      if (phase1) {
        // Cannot happen in exact arithmetic; refresh and retry.
        if (since_refactor == 0) {
          throw ResourceError("simplex: phase 1 ray (numerical failure)");
        }
        factor_or_repair();
        since_refactor = 0;
        continue;
      }
      status = Status::kUnbounded;
      break;
    }

    const double step = flip ? range : theta;
    VarStatus leave_status = VarStatus::kAtLower;
    if (!flip) {
      const int l = head_[leave];
      if (-dir * alpha[leave] < 0.0) {
        leave_status = (phase1 && x_[l] > ub_[l] + ftol) ? VarStatus::kAtUpper
                                                         : VarStatus::kAtLower;
      } else {
        leave_status = (phase1 && x_[l] < lb_[l] - ftol) ? VarStatus::kAtLower
                                                         : VarStatus::kAtUpper;
      }
    }
    if (step != 0.0) {
      x_[q] += dir * step;
      for (int r = 0; r < m_; ++r) {
        if (alpha[r] != 0.0) x_[head_[r]] -= dir * step * alpha[r];
      }
    }
    ++iterations;

    if (flip) {
      status_[q] = dir > 0 ? VarStatus::kAtUpper : VarStatus::kAtLower;
      x_[q] = dir > 0 ? ub_[q] : lb_[q];
    } else {
      const int l = head_[leave];
      status_[l] = fit_status(leave_status, lb_[l], ub_[l]);
      x_[l] = nonbasic_value(l, status_[l]);
      pos_[l] = -1;
      head_[leave] = q;
      pos_[q] = leave;
      status_[q] = VarStatus::kBasic;

      Eta eta;
      eta.row = leave;
      eta.pivot = alpha[leave];
      for (int r = 0; r < m_; ++r) {
        if (r != leave && alpha[r] != 0.0) {
          eta.index.push_back(r);
          eta.value.push_back(alpha[r]);
        }
      }
      etas_.push_back(std::move(eta));
      ++since_refactor;
    }

    if (step <= kDegenerateStep) {
      if (++degenerate_run >= tol_.degenerate_threshold) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
  }

  Solution sol;
  sol.status = status;
  sol.iterations = iterations;
  sol.primal.resize(n_);
  for (int j = 0; j < n_; ++j) sol.primal[j] = x_[j] * col_scale_[j];
  double obj = 0.0;
  for (int j = 0; j < n_; ++j) obj += orig_cost_[j] * sol.primal[j];
  sol.objective_value = status == Status::kUnbounded ? -kInf : obj;
  sol.basis.status = status_;
  return sol;
}

SimplexSolver::SimplexSolver(const LinearProgram& lp,
                             const FeasTolerances& tol)
    : impl_(std::make_unique<Impl>(lp, tol)) {}

SimplexSolver::~SimplexSolver() = default;

void SimplexSolver::set_var_bounds(int var, double lower, double upper) {
  impl_->set_var_bounds(var, lower, upper);
}

Bounds SimplexSolver::var_bounds(int var) const {
  return impl_->var_bounds(var);
}

Solution SimplexSolver::solve(const Basis* warm_start) {
  return impl_->solve(warm_start);
}

Solution solve_lp(const LinearProgram& lp, const FeasTolerances& tol,
                  const Basis* warm_start) {
  SimplexSolver solver(lp, tol);
  return solver.solve(warm_start);
}

}  // namespace cems::lp
