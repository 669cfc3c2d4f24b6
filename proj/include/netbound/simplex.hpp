#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netbound/errors.hpp"
#include "netbound/rational.hpp"

namespace netbound {

enum class RowSense { less_equal, equal, greater_equal };

struct LinearTerm {
  int var = 0;
  Rational coeff;
};

struct LinearConstraint {
  std::vector<LinearTerm> terms;
  RowSense sense = RowSense::less_equal;
  Rational rhs;
};

// maximize c·x subject to rows, x >= 0.
class LinearProgram {
 public:
  int add_variable(std::string name, Rational objective = 0) {
    names_.push_back(std::move(name));
    objective_.push_back(std::move(objective));
    return static_cast<int>(names_.size()) - 1;
  }

  void add_constraint(LinearConstraint row) {
    for (const auto& t : row.terms)
      if (t.var < 0 || t.var >= num_variables()) throw ValidationError("constraint references unknown variable");
    rows_.push_back(std::move(row));
  }

  void set_objective(int var, Rational coeff) { objective_.at(static_cast<std::size_t>(var)) = std::move(coeff); }

  int num_variables() const { return static_cast<int>(names_.size()); }
  int num_constraints() const { return static_cast<int>(rows_.size()); }
  const std::string& name(int var) const { return names_.at(static_cast<std::size_t>(var)); }
  const std::vector<LinearConstraint>& constraints() const { return rows_; }
  const std::vector<Rational>& objective() const { return objective_; }

 private:
  std::vector<std::string> names_;
  std::vector<Rational> objective_;
  std::vector<LinearConstraint> rows_;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Rational objective;
  std::vector<Rational> values;            // one per structural variable
  std::vector<std::string> basic_columns;  // optimal basis, by column name
  int pivots = 0;
};

namespace detail {

// Dense two-phase tableau simplex over exact rationals with Bland's rule:
// entering column is the lowest-indexed improving one, leaving row breaks
// ratio ties by lowest basic column index. Bland's rule cannot cycle.
class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp) : lp_(lp) {
    const int m = lp.num_constraints();
    structural_ = lp.num_variables();
    int slack_count = 0, artificial_count = 0;
    for (const auto& row : lp.constraints()) {
      RowSense sense = normalized_sense(row);
      if (sense != RowSense::equal) ++slack_count;
      if (sense != RowSense::less_equal) ++artificial_count;
    }
    first_artificial_ = structural_ + slack_count;
    cols_ = first_artificial_ + artificial_count;

    a_.assign(static_cast<std::size_t>(m), std::vector<Rational>(static_cast<std::size_t>(cols_)));
    b_.resize(static_cast<std::size_t>(m));
    basis_.resize(static_cast<std::size_t>(m));
    column_names_.reserve(static_cast<std::size_t>(cols_));
    for (int j = 0; j < structural_; ++j) column_names_.push_back(lp.name(j));

    int next_slack = structural_, next_artificial = first_artificial_;
    std::vector<std::string> artificial_names;
    for (int i = 0; i < m; ++i) {
      const auto& row = lp.constraints()[i];
      const bool flip = sgn(row.rhs) < 0;
      for (const auto& t : row.terms) a_[i][t.var] += flip ? Rational(-t.coeff) : t.coeff;
      b_[i] = flip ? Rational(-row.rhs) : row.rhs;
      RowSense sense = normalized_sense(row);
      if (sense == RowSense::less_equal) {
        a_[i][next_slack] = 1;
        basis_[i] = next_slack;
        column_names_.push_back("slack[" + std::to_string(i) + "]");
        ++next_slack;
      } else {
        if (sense == RowSense::greater_equal) {
          a_[i][next_slack] = -1;
          column_names_.push_back("surplus[" + std::to_string(i) + "]");
          ++next_slack;
        }
        a_[i][next_artificial] = 1;
        basis_[i] = next_artificial;
        artificial_names.push_back("artificial[" + std::to_string(i) + "]");
        ++next_artificial;
      }
    }
    for (auto& n : artificial_names) column_names_.push_back(std::move(n));
  }

  LpSolution solve() {
    LpSolution out;
    // Phase 1: maximize -Σ artificials.
    if (first_artificial_ < cols_) {
      std::vector<Rational> cost(static_cast<std::size_t>(cols_));
      for (int j = first_artificial_; j < cols_; ++j) cost[j] = -1;
      price(cost);
      run(cols_, out.pivots);
      if (sgn(objective_) < 0) {
        out.status = LpStatus::infeasible;
        return out;
      }
      drive_out_artificials(out.pivots);
    }
    // Phase 2 on the original objective; artificial columns may not enter.
    std::vector<Rational> cost(static_cast<std::size_t>(cols_));
    for (int j = 0; j < structural_; ++j) cost[j] = lp_.objective()[j];
    price(cost);
    if (!run(first_artificial_, out.pivots)) {
      out.status = LpStatus::unbounded;
      return out;
    }
    out.status = LpStatus::optimal;
    out.objective = objective_;
    out.values.assign(static_cast<std::size_t>(structural_), Rational(0));
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i] < structural_) out.values[basis_[i]] = b_[i];
      out.basic_columns.push_back(column_names_[basis_[i]]);
    }
    return out;
  }

 private:
  static RowSense normalized_sense(const LinearConstraint& row) {
    if (sgn(row.rhs) >= 0 || row.sense == RowSense::equal) return row.sense;
    return row.sense == RowSense::less_equal ? RowSense::greater_equal : RowSense::less_equal;
  }

  // Reduced costs and objective value for the current basis.
  void price(const std::vector<Rational>& cost) {
    reduced_ = cost;
    objective_ = 0;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      objective_ += cb * b_[i];
      for (int j = 0; j < cols_; ++j)
        if (sgn(a_[i][j]) != 0) reduced_[j] -= cb * a_[i][j];
    }
  }

  // Iterates until optimal (true) or unbounded (false). Only columns below
  // `allowed_cols` may enter.
  bool run(int allowed_cols, int& pivots) {
    for (;;) {
      int entering = -1;
      for (int j = 0; j < allowed_cols; ++j) {
        if (sgn(reduced_[j]) > 0) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;
      int leaving = -1;
      Rational best_ratio;
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (sgn(a_[i][entering]) <= 0) continue;
        Rational ratio = b_[i] / a_[i][entering];
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[static_cast<std::size_t>(leaving)])) {
          leaving = static_cast<int>(i);
          best_ratio = std::move(ratio);
        }
      }
      if (leaving < 0) return false;
      pivot(static_cast<std::size_t>(leaving), entering);
      ++pivots;
    }
  }

  void pivot(std::size_t r, int q) {
    auto& row = a_[r];
    const Rational inv = 1 / row[q];
    std::vector<int> nonzero;
    for (int j = 0; j < cols_; ++j) {
      if (sgn(row[j]) != 0) {
        row[j] *= inv;
        nonzero.push_back(j);
      }
    }
    b_[r] *= inv;
    Rational factor;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (i == r || sgn(a_[i][q]) == 0) continue;
      factor = a_[i][q];
      for (int j : nonzero) a_[i][j] -= factor * row[j];
      b_[i] -= factor * b_[r];
    }
    if (sgn(reduced_[q]) != 0) {
      factor = reduced_[q];
      for (int j : nonzero) reduced_[j] -= factor * row[j];
      objective_ += factor * b_[r];
    }
    basis_[r] = q;
  }

  // After a feasible phase 1 every artificial still basic sits at zero. Pivot
  // it out on any non-artificial column; a row with none is redundant.
  void drive_out_artificials(int& pivots) {
    for (std::size_t i = 0; i < basis_.size();) {
      if (basis_[i] < first_artificial_) {
        ++i;
        continue;
      }
      int col = -1;
      for (int j = 0; j < first_artificial_; ++j) {
        if (sgn(a_[i][j]) != 0) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivot(i, col);
        ++pivots;
        ++i;
      } else {
        a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(i));
        b_.erase(b_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  const LinearProgram& lp_;
  int structural_ = 0;
  int first_artificial_ = 0;
  int cols_ = 0;
  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> b_;
  std::vector<int> basis_;
  std::vector<Rational> reduced_;
  Rational objective_;
  std::vector<std::string> column_names_;
};

}  // namespace detail

inline LpSolution solve_lp(const LinearProgram& lp) { return detail::Tableau(lp).solve(); }

}  // namespace netbound
