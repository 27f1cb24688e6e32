#include "core/cost.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"

namespace carbon_sched {

namespace {

void check_dimensions(const SlotDecision& decision, const SlotObservation& obs,
                      const std::vector<Location>& locations) {
  if (decision.assignment.size() != obs.tasks.size()) {
    throw Error(ErrorCode::kValidation,
                "assignment has " + std::to_string(decision.assignment.size()) +
                    " rows for " + std::to_string(obs.tasks.size()) + " tasks");
  }
  if (obs.carbon_intensity.size() != locations.size()) {
    throw Error(ErrorCode::kValidation,
                "observation carries " + std::to_string(obs.carbon_intensity.size()) +
                    " intensities for " + std::to_string(locations.size()) + " locations");
  }
  for (const auto& row : decision.assignment) {
    if (row.size() != locations.size()) {
      throw Error(ErrorCode::kValidation, "assignment row width does not match locations");
    }
  }
}

}  // namespace

double task_emission_kg(const MlTask& task, const Location& location,
                        double intensity_kg_per_j) {
  return task.input_bits * location.energy_per_bit * intensity_kg_per_j;
}

std::vector<std::vector<double>> emission_matrix(const SlotObservation& obs,
                                                 const std::vector<Location>& locations) {
  std::vector<std::vector<double>> e(obs.tasks.size(),
                                     std::vector<double>(locations.size(), 0.0));
  for (size_t i = 0; i < obs.tasks.size(); ++i) {
    for (size_t j = 0; j < locations.size(); ++j) {
      e[i][j] = task_emission_kg(obs.tasks[i], locations[j], obs.carbon_intensity[j]);
    }
  }
  return e;
}

double carbon_emission(const SlotDecision& decision, const SlotObservation& obs,
                       const std::vector<Location>& locations) {
  check_dimensions(decision, obs, locations);
  double total = 0.0;
  for (size_t i = 0; i < decision.assignment.size(); ++i) {
    const auto& row = decision.assignment[i];
    for (size_t j = 0; j < row.size(); ++j) {
      if (row[j] != 0) {
        total += task_emission_kg(obs.tasks[i], locations[j], obs.carbon_intensity[j]);
      }
    }
  }
  return total;
}

double purchase_cost(const SlotDecision& decision, const SlotObservation& obs,
                     double frame_future_price) {
  if (decision.cer_spot_kg < 0.0 || decision.cer_future_share_kg < 0.0) {
    throw Error(ErrorCode::kValidation, "CER purchase amounts must be non-negative");
  }
  if (!(frame_future_price > 0.0) || !(obs.spot_price > 0.0)) {
    throw Error(ErrorCode::kValidation, "CER prices must be positive");
  }
  return decision.cer_future_share_kg * frame_future_price +
         decision.cer_spot_kg * obs.spot_price;
}

double accuracy_loss(const SlotDecision& decision,
                     const std::vector<Location>& locations) {
  double total = 0.0;
  for (const auto& row : decision.assignment) {
    if (row.size() != locations.size()) {
      throw Error(ErrorCode::kValidation, "assignment row width does not match locations");
    }
    for (size_t j = 0; j < row.size(); ++j) {
      if (row[j] != 0) total += locations[j].accuracy_loss;
    }
  }
  return total;
}

ConstraintReport check_constraints(const SlotDecision& decision,
                                   const SlotObservation& obs,
                                   const std::vector<Location>& locations) {
  check_dimensions(decision, obs, locations);
  ConstraintReport report;

  double worst_row_dev = 0.0;
  for (size_t i = 0; i < decision.assignment.size(); ++i) {
    int row_sum = 0;
    for (uint8_t v : decision.assignment[i]) {
      if (v > 1) report.binary_ok = false;
      row_sum += v;
    }
    const bool dropped = i < decision.dropped.size() && decision.dropped[i] != 0;
    const int target = dropped ? 0 : 1;
    worst_row_dev = std::max(worst_row_dev, std::abs(static_cast<double>(row_sum - target)));
  }
  report.row_sum_slack = -worst_row_dev;

  // Edge loads are sums of whole cycles, so they are exact in doubles.
  double min_capacity_slack = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < locations.size(); ++j) {
    if (locations[j].unbounded()) continue;
    double load = 0.0;
    for (size_t i = 0; i < decision.assignment.size(); ++i) {
      if (decision.assignment[i][j] != 0) load += obs.tasks[i].workload_cycles;
    }
    min_capacity_slack = std::min(min_capacity_slack, locations[j].capacity_cycles - load);
  }
  report.capacity_slack =
      std::isfinite(min_capacity_slack) ? min_capacity_slack : 0.0;

  const double emission = carbon_emission(decision, obs, locations);
  report.coverage_slack =
      decision.cer_future_share_kg + decision.cer_spot_kg - emission;

  const double slacks[] = {report.binary_ok ? 0.0 : -1.0, report.row_sum_slack,
                           report.capacity_slack, report.coverage_slack};
  double min_slack = 0.0;
  for (double s : slacks) min_slack = std::min(min_slack, s);
  report.worst_violation = std::max(0.0, -min_slack);
  report.feasible = min_slack >= -kSlackTolerance;
  return report;
}

}  // namespace carbon_sched
