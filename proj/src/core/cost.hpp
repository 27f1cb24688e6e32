#pragma once

#include <vector>

#include "core/model.hpp"

namespace carbon_sched {

// Slack tolerance shared by every feasibility check (LP output carries
// floating-point noise).
inline constexpr double kSlackTolerance = 1e-9;

// Per-constraint outcome of check_constraints. Slacks are signed: negative
// means violated by that amount.
struct ConstraintReport {
  bool binary_ok = true;        // assignment entries are 0/1
  double row_sum_slack = 0.0;   // -max_i |row_sum_i - target_i|
  double capacity_slack = 0.0;  // min over edges of W_j - load_j (cycles)
  double coverage_slack = 0.0;  // future share + spot - emission (kg)
  bool feasible = false;
  double worst_violation = 0.0;  // max(0, -min slack)
};

// Emission of one task at one location in kg: H_i * P_j * C_j.
double task_emission_kg(const MlTask& task, const Location& location,
                        double intensity_kg_per_j);

// Full tasks x locations emission matrix for a slot.
std::vector<std::vector<double>> emission_matrix(const SlotObservation& obs,
                                                 const std::vector<Location>& locations);

// Total emission of a decision in kg.
double carbon_emission(const SlotDecision& decision, const SlotObservation& obs,
                       const std::vector<Location>& locations);

// Slot purchase cost in dollars: share * R_lt + spot * R_rt. The future
// price is the one locked at the governing frame start.
double purchase_cost(const SlotDecision& decision, const SlotObservation& obs,
                     double frame_future_price);

// Total inference accuracy loss of a decision.
double accuracy_loss(const SlotDecision& decision,
                     const std::vector<Location>& locations);

// Evaluates binariness, one-location-per-task, edge capacities and CER
// coverage for a decision. Reporting only; never throws on infeasibility.
ConstraintReport check_constraints(const SlotDecision& decision,
                                   const SlotObservation& obs,
                                   const std::vector<Location>& locations);

}  // namespace carbon_sched
