#pragma once

#include <vector>

#include "core/lp.hpp"
#include "core/model.hpp"

namespace carbon_sched {

// Relaxed assignment problem for one slot: fractional offloading variables
// x_ij in [0,1] plus one scaled purchase variable. Frame-plan instances
// price the future purchase r_lt (spot fixed to zero at frame starts);
// slot-dispatch instances price the on-demand purchase r_rt on top of the
// frame share.
struct AssignmentLp {
  LpProblem lp;
  int n_tasks = 0;
  int n_locations = 0;
  bool frame_start = false;
  int frame_length = 1;          // T, frame-plan instances only
  double queue = 0.0;            // backlog ($) weighting the purchase term
  double v_weight = 0.0;         // $ per unit accuracy loss
  double price = 0.0;            // future price (frame) or spot price (slot)
  double future_share_kg = 0.0;  // slot-dispatch instances only
  double purchase_scale_kg = 1.0;  // kg per unit of the LP purchase variable
  std::vector<std::vector<double>> emission_kg;  // tasks x locations
  std::vector<double> accuracy;                  // per location
  std::vector<double> workload_cycles;           // per task
  std::vector<double> capacity_cycles;           // per location (+inf cloud)
};

// Frame-start problem: choose x(t) and the future purchase covering the
// frame evenly. Constraint set: one location per task, edge capacities,
// emission covered by r_lt / T.
AssignmentLp build_frame_lp(const SlotObservation& obs, double queue, double v_weight,
                            const std::vector<Location>& locations, int frame_length);

// Mid-frame problem: choose x(tau) and the spot purchase topping up the
// fixed frame share.
AssignmentLp build_slot_lp(const SlotObservation& obs, double queue,
                           double future_share_kg, double v_weight,
                           const std::vector<Location>& locations);

struct FractionalSolution {
  std::vector<std::vector<double>> x;  // tasks x locations, rows sum to 1
  double purchase_kg = 0.0;            // r_lt total (frame) or r_rt (slot)
  double objective = 0.0;
  long lp_iterations = 0;
};

// Simplex solve plus extraction. The purchase is post-passed to the least
// feasible value for the fractional assignment, so a zero-backlog objective
// never inflates costs.
FractionalSolution solve_relaxation(const AssignmentLp& problem);

// Least purchase satisfying the coverage constraint for a fixed assignment
// (entries are location indices, -1 for dropped tasks). Returns r_lt at a
// frame start (the whole-frame amount, T * Car) and r_rt otherwise.
double minimal_cer(const std::vector<int>& assignment,
                   const std::vector<std::vector<double>>& emission_kg,
                   double future_share_kg, bool frame_start, int frame_length);

// Objective value of an integral assignment under the same weighting the LP
// uses; `purchase_kg` follows the minimal_cer convention above.
double assignment_objective(const AssignmentLp& problem,
                            const std::vector<int>& assignment, double purchase_kg);

// Emission of an integral assignment in kg.
double assignment_emission(const std::vector<int>& assignment,
                           const std::vector<std::vector<double>>& emission_kg);

}  // namespace carbon_sched
