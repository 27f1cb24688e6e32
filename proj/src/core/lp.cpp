#include "core/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/error.hpp"

namespace carbon_sched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowKind { kLe, kGe, kEq };

// Standard-form working problem: rows over shifted variables y = x - lower,
// all right-hand sides non-negative.
struct StandardForm {
  int n = 0;  // structural variables
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<RowKind> kinds;
};

StandardForm to_standard_form(const LpProblem& p) {
  StandardForm sf;
  sf.n = p.num_vars;
  auto add_row = [&](std::vector<double> coeffs, double rhs, RowKind kind) {
    if (rhs < 0.0) {
      for (double& c : coeffs) c = -c;
      rhs = -rhs;
      if (kind == RowKind::kLe) kind = RowKind::kGe;
      else if (kind == RowKind::kGe) kind = RowKind::kLe;
    }
    sf.rows.push_back(std::move(coeffs));
    sf.rhs.push_back(rhs);
    sf.kinds.push_back(kind);
  };

  for (size_t r = 0; r < p.a_ub.size(); ++r) {
    double shift = 0.0;
    for (int j = 0; j < p.num_vars; ++j) shift += p.a_ub[r][j] * p.lower[j];
    add_row(p.a_ub[r], p.b_ub[r] - shift, RowKind::kLe);
  }
  for (size_t r = 0; r < p.a_eq.size(); ++r) {
    double shift = 0.0;
    for (int j = 0; j < p.num_vars; ++j) shift += p.a_eq[r][j] * p.lower[j];
    add_row(p.a_eq[r], p.b_eq[r] - shift, RowKind::kEq);
  }
  for (int j = 0; j < p.num_vars; ++j) {
    if (p.upper[j] == kInf) continue;
    std::vector<double> coeffs(p.num_vars, 0.0);
    coeffs[j] = 1.0;
    add_row(std::move(coeffs), p.upper[j] - p.lower[j], RowKind::kLe);
  }
  return sf;
}

class Tableau {
 public:
  Tableau(const StandardForm& sf) : n_(sf.n), m_(static_cast<int>(sf.rows.size())) {
    n_slack_ = 0;
    n_art_ = 0;
    slack_col_.assign(m_, -1);
    art_col_.assign(m_, -1);
    for (int i = 0; i < m_; ++i) {
      if (sf.kinds[i] != RowKind::kEq) ++n_slack_;
      if (sf.kinds[i] != RowKind::kLe) ++n_art_;
    }
    cols_ = n_ + n_slack_ + n_art_;
    data_.assign(m_ + 1, std::vector<double>(cols_ + 1, 0.0));
    basis_.assign(m_, -1);

    int next_slack = n_;
    int next_art = n_ + n_slack_;
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) data_[i][j] = sf.rows[i][j];
      data_[i][cols_] = sf.rhs[i];
      if (sf.kinds[i] == RowKind::kLe) {
        slack_col_[i] = next_slack;
        data_[i][next_slack] = 1.0;
        basis_[i] = next_slack;
        ++next_slack;
      } else if (sf.kinds[i] == RowKind::kGe) {
        slack_col_[i] = next_slack;
        data_[i][next_slack] = -1.0;
        ++next_slack;
      }
      if (sf.kinds[i] != RowKind::kLe) {
        art_col_[i] = next_art;
        data_[i][next_art] = 1.0;
        basis_[i] = next_art;
        ++next_art;
      }
    }
  }

  int cols() const { return cols_; }
  int rows() const { return m_; }
  int structural() const { return n_; }
  int art_begin() const { return n_ + n_slack_; }
  int slack_of(int row) const { return slack_col_[row]; }
  int art_of(int row) const { return art_col_[row]; }
  int basis(int row) const { return basis_[row]; }
  double rhs(int row) const { return data_[row][cols_]; }
  double entry(int row, int col) const { return data_[row][col]; }
  double reduced_cost(int col) const { return data_[m_][col]; }
  double objective() const { return -data_[m_][cols_]; }

  // Installs the cost vector and eliminates the basic columns from it.
  void set_costs(const std::vector<double>& costs) {
    auto& cost_row = data_[m_];
    std::fill(cost_row.begin(), cost_row.end(), 0.0);
    for (int j = 0; j < cols_ && j < static_cast<int>(costs.size()); ++j) {
      cost_row[j] = costs[j];
    }
    for (int i = 0; i < m_; ++i) {
      const double c = cost_row[basis_[i]];
      if (c == 0.0) continue;
      for (int j = 0; j <= cols_; ++j) cost_row[j] -= c * data_[i][j];
    }
  }

  void pivot(int row, int col) {
    auto& pivot_row = data_[row];
    const double pivot_value = pivot_row[col];
    for (int j = 0; j <= cols_; ++j) pivot_row[j] /= pivot_value;
    pivot_row[col] = 1.0;
    for (int i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double factor = data_[i][col];
      if (factor == 0.0) continue;
      auto& r = data_[i];
      for (int j = 0; j <= cols_; ++j) {
        r[j] -= factor * pivot_row[j];
        if (std::abs(r[j]) < 1e-12) r[j] = 0.0;
      }
      r[col] = 0.0;
    }
    basis_[row] = col;
  }

  // Bland's rule iteration loop; col_limit excludes artificials in phase 2.
  LpStatus iterate(int col_limit, long& iterations) {
    for (;;) {
      int entering = -1;
      for (int j = 0; j < col_limit; ++j) {
        if (data_[m_][j] < -kPivotTolerance) { entering = j; break; }
      }
      if (entering < 0) return LpStatus::kOptimal;

      int leaving = -1;
      double best_ratio = kInf;
      for (int i = 0; i < m_; ++i) {
        const double a = data_[i][entering];
        if (a <= kPivotTolerance) continue;
        const double ratio = data_[i][cols_] / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 &&
             (leaving < 0 || basis_[i] < basis_[leaving]))) {
          best_ratio = ratio;
          leaving = i;
        }
      }
      if (leaving < 0) return LpStatus::kUnbounded;

      pivot(leaving, entering);
      if (++iterations > kSimplexIterationCap) {
        throw Error(ErrorCode::kIterationLimit, "simplex exceeded the iteration cap");
      }
    }
  }

  // Degenerate pivots that swap zero-valued artificials out of the basis.
  void evict_artificials(long& iterations) {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < art_begin()) continue;
      int col = -1;
      for (int j = 0; j < art_begin(); ++j) {
        if (std::abs(data_[i][j]) > kPivotTolerance) { col = j; break; }
      }
      if (col >= 0) {
        pivot(i, col);
        ++iterations;
      }
      // Otherwise the row is redundant; the artificial stays basic at zero.
    }
  }

 private:
  int n_ = 0, m_ = 0, n_slack_ = 0, n_art_ = 0, cols_ = 0;
  std::vector<std::vector<double>> data_;  // m_ constraint rows + cost row
  std::vector<int> basis_;
  std::vector<int> slack_col_;
  std::vector<int> art_col_;
};

}  // namespace

void LpProblem::validate() const {
  auto fail = [](const std::string& m) { throw Error(ErrorCode::kValidation, m); };
  if (num_vars <= 0) fail("LP needs at least one variable");
  if (static_cast<int>(objective.size()) != num_vars) fail("objective size mismatch");
  if (static_cast<int>(lower.size()) != num_vars ||
      static_cast<int>(upper.size()) != num_vars) {
    fail("bound vectors must match the variable count");
  }
  if (a_ub.size() != b_ub.size() || a_eq.size() != b_eq.size()) {
    fail("constraint matrix/rhs size mismatch");
  }
  for (const auto& row : a_ub) {
    if (static_cast<int>(row.size()) != num_vars) fail("inequality row width mismatch");
  }
  for (const auto& row : a_eq) {
    if (static_cast<int>(row.size()) != num_vars) fail("equality row width mismatch");
  }
  for (int j = 0; j < num_vars; ++j) {
    if (!std::isfinite(lower[j])) fail("lower bounds must be finite");
    if (std::isnan(upper[j]) || upper[j] < lower[j]) fail("bounds must satisfy lower <= upper");
    if (!std::isfinite(objective[j])) fail("objective coefficients must be finite");
  }
  for (double v : b_ub) {
    if (!std::isfinite(v)) fail("b_ub entries must be finite");
  }
  for (double v : b_eq) {
    if (!std::isfinite(v)) fail("b_eq entries must be finite");
  }
}

LpSolution simplex_solve(const LpProblem& problem) {
  problem.validate();

  const StandardForm sf = to_standard_form(problem);
  Tableau tableau(sf);
  LpSolution solution;
  solution.duality_gap = std::numeric_limits<double>::quiet_NaN();

  // Phase 1: minimize the artificial total.
  {
    std::vector<double> costs(tableau.cols(), 0.0);
    for (int j = tableau.art_begin(); j < tableau.cols(); ++j) costs[j] = 1.0;
    tableau.set_costs(costs);
    const LpStatus status = tableau.iterate(tableau.cols(), solution.iterations);
    if (status == LpStatus::kUnbounded) {
      throw Error(ErrorCode::kInternal, "phase-1 objective cannot be unbounded");
    }
    if (tableau.objective() > 1e-7) {
      solution.status = LpStatus::kInfeasible;
      return solution;
    }
    tableau.evict_artificials(solution.iterations);
  }

  // Phase 2: the real objective over the shifted variables.
  {
    std::vector<double> costs(tableau.cols(), 0.0);
    for (int j = 0; j < tableau.structural(); ++j) costs[j] = problem.objective[j];
    tableau.set_costs(costs);
    const LpStatus status = tableau.iterate(tableau.art_begin(), solution.iterations);
    if (status == LpStatus::kUnbounded) {
      solution.status = LpStatus::kUnbounded;
      return solution;
    }
  }

  solution.status = LpStatus::kOptimal;
  solution.x.assign(problem.num_vars, 0.0);
  for (int i = 0; i < tableau.rows(); ++i) {
    const int b = tableau.basis(i);
    if (b < tableau.structural()) solution.x[b] = tableau.rhs(i);
  }
  for (int j = 0; j < problem.num_vars; ++j) solution.x[j] += problem.lower[j];
  solution.objective = 0.0;
  for (int j = 0; j < problem.num_vars; ++j) {
    solution.objective += problem.objective[j] * solution.x[j];
  }

  // Dual value from the final reduced costs: dual_i is -rc(slack_i) for <=
  // rows, +rc(surplus_i) for >= rows, -rc(artificial_i) for equalities.
  double dual_objective = 0.0;
  for (int i = 0; i < tableau.rows(); ++i) {
    double dual = 0.0;
    if (sf.kinds[i] == RowKind::kLe) {
      dual = -tableau.reduced_cost(tableau.slack_of(i));
    } else if (sf.kinds[i] == RowKind::kGe) {
      dual = tableau.reduced_cost(tableau.slack_of(i));
    } else {
      dual = -tableau.reduced_cost(tableau.art_of(i));
    }
    dual_objective += dual * sf.rhs[i];
  }
  double shift = 0.0;  // constant from y = x - lower substitution
  for (int j = 0; j < problem.num_vars; ++j) {
    shift += problem.objective[j] * problem.lower[j];
  }
  solution.duality_gap = std::abs((dual_objective + shift) - solution.objective);
  return solution;
}

}  // namespace carbon_sched
