// Copyright 2026 The Authors.
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

#include "gdsp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace gdsp {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;

// Standard-form tableau: rows x (columns + rhs), basis per row, row-major
// storage so pivots touch contiguous memory. Phase 1 minimizes the
// artificial sum, phase 2 maximizes the true objective. Slacks of
// non-flipped inequality rows start basic; artificials are created only
// where no slack can serve (equalities and sign-flipped rows).
class Tableau {
 public:
  using Dense =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  Tableau(const LinearProgram& lp) {
    const Index n = lp.num_vars;
    num_rows_ = static_cast<Index>(lp.rows.size());

    // Column layout: structural | slack (one per <= row) | artificial.
    num_slack_ = 0;
    Index num_art = 0;
    for (const auto& row : lp.rows) {
      if (row.sense == LinearProgram::Sense::kLessEqual) ++num_slack_;
      if (row.sense == LinearProgram::Sense::kEqual || row.rhs < 0) ++num_art;
    }
    num_cols_ = n + num_slack_ + num_art;
    art_begin_ = n + num_slack_;

    a_ = Dense::Zero(num_rows_, num_cols_ + 1);
    basis_.assign(num_rows_, -1);

    Index slack = 0, art = 0;
    for (Index r = 0; r < num_rows_; ++r) {
      const auto& row = lp.rows[r];
      double sign = row.rhs < 0 ? -1.0 : 1.0;
      for (const auto& [var, coeff] : row.coeffs) a_(r, var) += sign * coeff;
      a_(r, num_cols_) = sign * row.rhs;
      bool slack_basic = false;
      if (row.sense == LinearProgram::Sense::kLessEqual) {
        a_(r, n + slack) = sign;
        if (sign > 0) {
          basis_[r] = n + slack;
          slack_basic = true;
        }
        ++slack;
      }
      if (!slack_basic) {
        a_(r, art_begin_ + art) = 1.0;
        basis_[r] = art_begin_ + art;
        ++art;
      }
    }
  }

  // Minimize the artificial sum. Returns false when the LP is infeasible.
  bool phase1(int& budget) {
    if (art_begin_ == num_cols_) return true;  // all-slack basis is feasible
    Vector cost = Vector::Zero(num_cols_);
    for (Index j = art_begin_; j < num_cols_; ++j) cost[j] = -1.0;  // maximize -sum
    run(cost, num_cols_, budget);
    double art_sum = 0;
    for (Index r = 0; r < num_rows_; ++r)
      if (basis_[r] >= art_begin_) art_sum += a_(r, num_cols_);
    if (art_sum > 1e-7) return false;

    // Pivot remaining artificials out where possible; redundant rows keep
    // a zero-valued artificial, which the phase-2 cost ignores.
    for (Index r = 0; r < num_rows_; ++r) {
      if (basis_[r] < art_begin_) continue;
      for (Index j = 0; j < art_begin_; ++j) {
        if (std::abs(a_(r, j)) > kPivotTol) {
          pivot(r, j);
          break;
        }
      }
    }
    return true;
  }

  LpStatus phase2(const Vector& objective, int& budget) {
    Vector cost = Vector::Zero(num_cols_);
    cost.head(objective.size()) = objective;
    return run(cost, art_begin_, budget);
  }

  Vector solution(Index n) const {
    Vector x = Vector::Zero(n);
    for (Index r = 0; r < num_rows_; ++r)
      if (basis_[r] < n) x[basis_[r]] = a_(r, num_cols_);
    return x;
  }

 private:
  void pivot(Index row, Index col) {
    a_.row(row) /= a_(row, col);
    for (Index r = 0; r < num_rows_; ++r) {
      if (r == row) continue;
      double factor = a_(r, col);
      if (factor != 0) a_.row(r) -= factor * a_.row(row);
    }
    basis_[row] = col;
  }

  // Maximizes cost^T x over columns [0, col_limit). Artificial columns
  // beyond the limit never re-enter.
  LpStatus run(const Vector& cost, Index col_limit, int& budget) {
    bool bland = false;
    int degenerate_streak = 0;
    while (budget-- > 0) {
      // Reduced costs c_j - y^T A_j with y_r = cost of the r-th basic.
      Vector y(num_rows_);
      for (Index r = 0; r < num_rows_; ++r) y[r] = cost[basis_[r]];
      Vector reduced =
          cost.head(col_limit) - a_.leftCols(col_limit).transpose() * y;
      Index enter = -1;
      double best = kCostTol;
      for (Index j = 0; j < col_limit; ++j) {
        if (reduced[j] > (bland ? kCostTol : best)) {
          enter = j;
          if (bland) break;  // first improving index
          best = reduced[j];
        }
      }
      if (enter < 0) return LpStatus::kOptimal;

      Index leave = -1;
      double best_ratio = 0;
      for (Index r = 0; r < num_rows_; ++r) {
        double pivot_val = a_(r, enter);
        if (pivot_val <= kPivotTol) continue;
        double ratio = a_(r, num_cols_) / pivot_val;
        bool better;
        if (leave < 0 || ratio < best_ratio - 1e-12) {
          better = true;
        } else if (std::abs(ratio - best_ratio) <= 1e-12) {
          // Tie policy: Bland wants the smallest basis index; otherwise a
          // large pivot element keeps degenerate chains short and stable.
          better = bland ? basis_[r] < basis_[leave]
                         : pivot_val > a_(leave, enter);
        } else {
          better = false;
        }
        if (better) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return LpStatus::kUnbounded;

      if (best_ratio <= 1e-12) {
        if (++degenerate_streak > 50) bland = true;
      } else {
        degenerate_streak = 0;
        bland = false;  // progress made; resume fast pricing
      }
      pivot(leave, enter);
    }
    return LpStatus::kIterationLimit;
  }

  Dense a_;
  std::vector<Index> basis_;
  Index num_rows_ = 0;
  Index num_cols_ = 0;
  Index num_slack_ = 0;
  Index art_begin_ = 0;
};

}  // namespace

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

LpResult solve_lp(const LinearProgram& lp, int max_iterations) {
  if (lp.num_vars > 5000)
    throw InvalidInput("LP too large for the dense tableau solver (> 5000 variables)");
  if (lp.objective.size() != lp.num_vars)
    throw InvalidInput("objective has wrong length");
  for (const auto& row : lp.rows)
    for (const auto& [var, coeff] : row.coeffs) {
      (void)coeff;
      if (var < 0 || var >= lp.num_vars)
        throw InvalidInput("constraint references unknown variable");
    }

  LpResult out;
  Tableau tableau(lp);
  int budget = max_iterations;
  bool feasible = tableau.phase1(budget);
  if (budget <= 0) {
    out.status = LpStatus::kIterationLimit;
    return out;
  }
  if (!feasible) {
    out.status = LpStatus::kInfeasible;
    return out;
  }
  out.status = tableau.phase2(lp.objective, budget);
  if (out.status == LpStatus::kOptimal ||
      out.status == LpStatus::kIterationLimit) {
    out.x = tableau.solution(lp.num_vars);
    out.objective = lp.objective.dot(out.x);
  }
  return out;
}

void dump_lp(const LinearProgram& lp, std::ostream& os) {
  auto name = [&lp](Index j) {
    if (j < static_cast<Index>(lp.var_names.size()) && !lp.var_names[j].empty())
      return lp.var_names[j];
    return "x" + std::to_string(j);
  };
  os << "max";
  for (Index j = 0; j < lp.num_vars; ++j)
    if (lp.objective[j] != 0)
      os << ' ' << (lp.objective[j] >= 0 ? "+" : "-") << ' '
         << std::abs(lp.objective[j]) << ' ' << name(j);
  os << '\n';
  for (const auto& row : lp.rows) {
    bool first = true;
    for (const auto& [var, coeff] : row.coeffs) {
      os << (first ? "" : " ") << (coeff >= 0 ? "+" : "-") << ' '
         << std::abs(coeff) << ' ' << name(var);
      first = false;
    }
    os << (row.sense == LinearProgram::Sense::kEqual ? " = " : " <= ")
       << row.rhs << '\n';
  }
}

}  // namespace gdsp
