#pragma once

#include <vector>

namespace carbon_sched {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

// Small dense linear program: minimize c.x subject to A_ub.x <= b_ub,
// A_eq.x = b_eq and per-variable bounds. Upper bounds may be +inf; lower
// bounds must be finite.
struct LpProblem {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<std::vector<double>> a_ub;
  std::vector<double> b_ub;
  std::vector<std::vector<double>> a_eq;
  std::vector<double> b_eq;
  std::vector<double> lower;
  std::vector<double> upper;

  void validate() const;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  long iterations = 0;
  // |primal - dual| at the reported optimum; NaN for non-optimal statuses.
  double duality_gap = 0.0;
};

// Two-phase dense tableau simplex. Deterministic: entering variable is the
// lowest-index eligible column (Bland's rule, which also rules out cycling),
// leaving row breaks ratio ties on the lowest basic index. Entries smaller
// than the pivot tolerance are treated as zero. Throws on iteration cap.
LpSolution simplex_solve(const LpProblem& problem);

inline constexpr double kPivotTolerance = 1e-9;
inline constexpr long kSimplexIterationCap = 1000000;

}  // namespace carbon_sched
