#include "core/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "core/cost.hpp"
#include "core/error.hpp"
#include "core/rounding.hpp"
#include "core/subproblem.hpp"

namespace carbon_sched {

namespace {

int cloud_of(const std::vector<Location>& locations) {
  for (size_t j = 0; j < locations.size(); ++j) {
    if (locations[j].kind == LocationKind::kCloud) return static_cast<int>(j);
  }
  throw Error(ErrorCode::kValidation, "location set has no cloud");
}

SlotDecision decision_from(const RoundingOutcome& outcome, int n_locations,
                           double spot_kg, double share_kg) {
  SlotDecision d;
  d.assignment = outcome.to_matrix(n_locations);
  d.dropped = outcome.dropped;
  d.cer_spot_kg = spot_kg;
  d.cer_future_share_kg = share_kg;
  return d;
}

// Relax, round, repair: the shared solve path of the LP-driven policies.
PolicyDecision solve_and_round(const AssignmentLp& problem, const SlotObservation& obs,
                               PolicyRuntime& rt) {
  const auto& locations = *rt.locations;
  PolicyDecision result;

  const FractionalSolution relaxed = solve_relaxation(problem);
  result.lp_iterations = relaxed.lp_iterations;

  RoundingOutcome outcome;
  outcome.assignment.assign(obs.tasks.size(), -1);
  outcome.dropped.assign(obs.tasks.size(), 0);
  if (!obs.tasks.empty()) {
    outcome = dependent_round(relaxed.x, obs.tasks, locations, rt.rounding_rng);
    if (rt.repair_enabled) {
      outcome = repair_capacity(std::move(outcome), obs.tasks, locations);
    }
  }
  result.orphans = outcome.orphan_count;
  result.repair_moves = static_cast<int>(outcome.repairs.size());

  const double purchase = minimal_cer(outcome.assignment, problem.emission_kg,
                                      problem.future_share_kg, problem.frame_start,
                                      problem.frame_length);
  if (problem.frame_start) {
    rt.frame_future_total_kg = purchase;
    rt.frame_share_kg = purchase / problem.frame_length;
    rt.frame_future_price = obs.future_price;
    rt.frozen_queue = rt.queue;
    result.decision = decision_from(outcome, problem.n_locations, 0.0, rt.frame_share_kg);
  } else {
    result.decision =
        decision_from(outcome, problem.n_locations, purchase, problem.future_share_kg);
  }
  return result;
}

}  // namespace

PolicyDecision TtoaPolicy::frame_start(const SlotObservation& obs, PolicyRuntime& rt) {
  const AssignmentLp problem = build_frame_lp(obs, rt.queue, rt.v_weight,
                                              *rt.locations, rt.frame_length);
  return solve_and_round(problem, obs, rt);
}

PolicyDecision TtoaPolicy::slot(const SlotObservation& obs, PolicyRuntime& rt) {
  const AssignmentLp problem = build_slot_lp(obs, rt.frozen_queue, rt.frame_share_kg,
                                             rt.v_weight, *rt.locations);
  PolicyDecision result = solve_and_round(problem, obs, rt);
  result.decision.cer_future_share_kg = rt.frame_share_kg;
  return result;
}

PolicyDecision TtoaPolicy::decide(const SlotObservation& obs, PolicyRuntime& rt,
                                  bool is_frame_start) {
  return is_frame_start ? frame_start(obs, rt) : slot(obs, rt);
}

PolicyDecision ACloudPolicy::decide(const SlotObservation& obs, PolicyRuntime& rt,
                                    bool /*frame_start*/) {
  const auto& locations = *rt.locations;
  const int cloud = cloud_of(locations);

  RoundingOutcome outcome;
  outcome.assignment.assign(obs.tasks.size(), cloud);
  outcome.dropped.assign(obs.tasks.size(), 0);

  PolicyDecision result;
  result.decision = decision_from(outcome, static_cast<int>(locations.size()), 0.0, 0.0);
  result.decision.cer_spot_kg =
      carbon_emission(result.decision, obs, locations);
  rt.frame_share_kg = 0.0;
  rt.frame_future_price = obs.future_price;
  return result;
}

PolicyDecision OTimePolicy::decide(const SlotObservation& obs, PolicyRuntime& rt,
                                   bool /*frame_start*/) {
  const AssignmentLp problem =
      build_slot_lp(obs, rt.queue, 0.0, rt.v_weight, *rt.locations);
  PolicyDecision result = solve_and_round(problem, obs, rt);
  rt.frame_share_kg = 0.0;
  rt.frame_future_price = obs.future_price;
  result.decision.cer_future_share_kg = 0.0;
  return result;
}

PolicyDecision GreedyPolicy::decide(const SlotObservation& obs, PolicyRuntime& rt,
                                    bool /*frame_start*/) {
  const auto& locations = *rt.locations;
  const int m = static_cast<int>(locations.size());
  const auto emissions = emission_matrix(obs, locations);

  std::vector<int> by_accuracy(m);
  std::iota(by_accuracy.begin(), by_accuracy.end(), 0);
  std::stable_sort(by_accuracy.begin(), by_accuracy.end(), [&](int a, int b) {
    return locations[a].accuracy_loss < locations[b].accuracy_loss;
  });

  std::vector<double> load(m, 0.0);
  RoundingOutcome outcome;
  outcome.assignment.assign(obs.tasks.size(), -1);
  outcome.dropped.assign(obs.tasks.size(), 0);

  const double allowance = rt.budget * static_cast<double>(rt.slots_elapsed + 1);
  double slot_cost = 0.0;
  for (size_t i = 0; i < obs.tasks.size(); ++i) {
    auto fits = [&](int j) {
      return locations[j].unbounded() ||
             load[j] + obs.tasks[i].workload_cycles <= locations[j].capacity_cycles;
    };

    int chosen = -1;
    for (int j : by_accuracy) {
      if (!fits(j)) continue;
      const double extra = emissions[i][j] * obs.spot_price;
      if (rt.cumulative_cost + slot_cost + extra <= allowance) {
        chosen = j;
        break;
      }
    }
    if (chosen < 0) {
      // Budget exhausted: cheapest feasible emission instead.
      double best = std::numeric_limits<double>::infinity();
      for (int j = 0; j < m; ++j) {
        if (fits(j) && emissions[i][j] < best) {
          best = emissions[i][j];
          chosen = j;
        }
      }
    }
    outcome.assignment[i] = chosen;
    load[chosen] += obs.tasks[i].workload_cycles;
    slot_cost += emissions[i][chosen] * obs.spot_price;
  }

  PolicyDecision result;
  result.decision = decision_from(outcome, m, 0.0, 0.0);
  result.decision.cer_spot_kg = carbon_emission(result.decision, obs, locations);
  rt.frame_share_kg = 0.0;
  rt.frame_future_price = obs.future_price;
  return result;
}

std::unique_ptr<Policy> make_policy(const std::string& name) {
  if (name == "ttoa") return std::make_unique<TtoaPolicy>();
  if (name == "acloud") return std::make_unique<ACloudPolicy>();
  if (name == "otime") return std::make_unique<OTimePolicy>();
  if (name == "greedy") return std::make_unique<GreedyPolicy>();
  throw Error(ErrorCode::kValidation, "unknown policy '" + name + "'");
}

const std::vector<std::string>& policy_names() {
  static const std::vector<std::string> names = {"ttoa", "acloud", "otime", "greedy"};
  return names;
}

}  // namespace carbon_sched
