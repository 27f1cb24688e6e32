#include "core/subproblem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/cost.hpp"
#include "core/error.hpp"

namespace carbon_sched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shared constraint assembly; the two builders differ only in the purchase
// term's price and the coverage right-hand side.
AssignmentLp build_common(const SlotObservation& obs, double queue, double v_weight,
                          const std::vector<Location>& locations, bool frame_start,
                          int frame_length, double future_share_kg, double price) {
  if (queue < 0.0) {
    throw Error(ErrorCode::kValidation, "queue backlog must be non-negative");
  }
  if (future_share_kg < 0.0) {
    throw Error(ErrorCode::kValidation, "frame share must be non-negative");
  }

  AssignmentLp out;
  out.n_tasks = static_cast<int>(obs.tasks.size());
  out.n_locations = static_cast<int>(locations.size());
  out.frame_start = frame_start;
  out.frame_length = frame_length;
  out.queue = queue;
  out.v_weight = v_weight;
  out.price = price;
  out.future_share_kg = future_share_kg;
  out.emission_kg = emission_matrix(obs, locations);
  out.accuracy.reserve(locations.size());
  out.capacity_cycles.reserve(locations.size());
  for (const auto& loc : locations) {
    out.accuracy.push_back(loc.accuracy_loss);
    out.capacity_cycles.push_back(loc.capacity_cycles);
  }
  out.workload_cycles.reserve(obs.tasks.size());
  for (const auto& task : obs.tasks) out.workload_cycles.push_back(task.workload_cycles);

  const int n = out.n_tasks;
  const int m = out.n_locations;
  const int purchase_var = n * m;

  double scale = 0.0;
  for (const auto& row : out.emission_kg) {
    for (double e : row) scale = std::max(scale, e);
  }
  if (scale <= 0.0) scale = 1.0;
  out.purchase_scale_kg = scale;

  LpProblem& lp = out.lp;
  lp.num_vars = n * m + 1;
  lp.objective.assign(lp.num_vars, 0.0);
  lp.lower.assign(lp.num_vars, 0.0);
  lp.upper.assign(lp.num_vars, 1.0);
  lp.upper[purchase_var] = kInf;

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) lp.objective[i * m + j] = v_weight * out.accuracy[j];
  }
  lp.objective[purchase_var] = queue * price * scale;

  // One location per task.
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(lp.num_vars, 0.0);
    for (int j = 0; j < m; ++j) row[i * m + j] = 1.0;
    lp.a_eq.push_back(std::move(row));
    lp.b_eq.push_back(1.0);
  }

  // Edge capacities, normalized by W_j so the tableau stays well scaled.
  for (int j = 0; j < m; ++j) {
    if (locations[j].unbounded()) continue;
    std::vector<double> row(lp.num_vars, 0.0);
    for (int i = 0; i < n; ++i) {
      row[i * m + j] = out.workload_cycles[i] / out.capacity_cycles[j];
    }
    lp.a_ub.push_back(std::move(row));
    lp.b_ub.push_back(1.0);
  }

  // Emission coverage, normalized by the largest per-task emission.
  {
    std::vector<double> row(lp.num_vars, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) row[i * m + j] = out.emission_kg[i][j] / scale;
    }
    row[purchase_var] = -1.0;
    lp.a_ub.push_back(std::move(row));
    lp.b_ub.push_back(future_share_kg / scale);
  }

  return out;
}

}  // namespace

AssignmentLp build_frame_lp(const SlotObservation& obs, double queue, double v_weight,
                            const std::vector<Location>& locations, int frame_length) {
  if (frame_length < 1) {
    throw Error(ErrorCode::kValidation, "frame length must be >= 1");
  }
  // Spot purchases are fixed to zero at frame starts; the purchase variable
  // is the per-slot coverage r_lt / T, priced at the future rate.
  return build_common(obs, queue, v_weight, locations, /*frame_start=*/true,
                      frame_length, /*future_share_kg=*/0.0, obs.future_price);
}

AssignmentLp build_slot_lp(const SlotObservation& obs, double queue,
                           double future_share_kg, double v_weight,
                           const std::vector<Location>& locations) {
  return build_common(obs, queue, v_weight, locations, /*frame_start=*/false,
                      /*frame_length=*/1, future_share_kg, obs.spot_price);
}

FractionalSolution solve_relaxation(const AssignmentLp& problem) {
  FractionalSolution result;
  if (problem.n_tasks == 0) {
    return result;  // nothing to place, least purchase is zero
  }

  const LpSolution lp = simplex_solve(problem.lp);
  if (lp.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kInternal,
                std::string("relaxed assignment LP came back ") +
                    (lp.status == LpStatus::kInfeasible ? "infeasible" : "unbounded"));
  }
  result.lp_iterations = lp.iterations;

  const int n = problem.n_tasks;
  const int m = problem.n_locations;
  result.x.assign(n, std::vector<double>(m, 0.0));
  double fractional_emission = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const double v = std::clamp(lp.x[i * m + j], 0.0, 1.0);
      result.x[i][j] = v;
      fractional_emission += v * problem.emission_kg[i][j];
    }
  }

  // Least purchase for this fractional assignment; ties at zero backlog are
  // broken downward instead of trusting an objective-free LP variable.
  double per_slot_coverage = 0.0;
  if (problem.frame_start) {
    per_slot_coverage = fractional_emission;
    result.purchase_kg = per_slot_coverage * problem.frame_length;
  } else {
    result.purchase_kg = std::max(0.0, fractional_emission - problem.future_share_kg);
    per_slot_coverage = result.purchase_kg;
  }

  result.objective = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      result.objective += problem.v_weight * problem.accuracy[j] * result.x[i][j];
    }
  }
  result.objective += problem.queue * problem.price * per_slot_coverage;
  return result;
}

double minimal_cer(const std::vector<int>& assignment,
                   const std::vector<std::vector<double>>& emission_kg,
                   double future_share_kg, bool frame_start, int frame_length) {
  const double emission = assignment_emission(assignment, emission_kg);
  if (frame_start) return emission * frame_length;
  return std::max(0.0, emission - future_share_kg);
}

double assignment_emission(const std::vector<int>& assignment,
                           const std::vector<std::vector<double>>& emission_kg) {
  double total = 0.0;
  for (size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] < 0) continue;
    total += emission_kg[i][assignment[i]];
  }
  return total;
}

double assignment_objective(const AssignmentLp& problem,
                            const std::vector<int>& assignment, double purchase_kg) {
  double value = 0.0;
  for (size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] < 0) continue;
    value += problem.v_weight * problem.accuracy[assignment[i]];
  }
  const double per_slot =
      problem.frame_start ? purchase_kg / problem.frame_length : purchase_kg;
  value += problem.queue * problem.price * per_slot;
  return value;
}

}  // namespace carbon_sched
