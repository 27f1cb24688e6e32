#pragma once

#include <utility>
#include <vector>

#include "core/model.hpp"
#include "core/rng.hpp"
#include "core/subproblem.hpp"

namespace carbon_sched {

// Probabilities within this distance of 0 or 1 are snapped to integral;
// floating-point drift would otherwise strand the pairing loop.
inline constexpr double kIntegralSnap = 1e-9;

struct RepairMove {
  int task = 0;
  int from = -1;  // -1 when the row had rounded to all zeros
  int to = 0;
};

struct RoundingOutcome {
  std::vector<int> assignment;   // location per task, -1 when dropped
  std::vector<uint8_t> dropped;
  std::vector<RepairMove> repairs;
  int orphan_count = 0;
  int iterations = 0;  // pair adjustments performed

  std::vector<std::vector<uint8_t>> to_matrix(int n_locations) const;
};

// One dependent-rounding step on a pair of probabilities with weights s1,
// s2: transfers mass so that at least one of the pair becomes integral
// while expectations are preserved exactly.
std::pair<double, double> pair_adjust(double p1, double p2, double s1, double s2,
                                      Rng& rng);

// Randomized dependent rounding of a fractional assignment. Per task, the
// floating entries are paired down until at most one remains; a final
// floating singleton is set to 1 unless that overloads its edge (given the
// tasks already rounded), in which case it is set to 0 and the task is
// flagged dropped. Cross-task capacity violations are left to
// repair_capacity.
RoundingOutcome dependent_round(const std::vector<std::vector<double>>& fractional,
                                const std::vector<MlTask>& tasks,
                                const std::vector<Location>& locations, Rng& rng);

// Baseline: one independent categorical draw per task row. Edge capacities
// are deliberately ignored.
RoundingOutcome independent_round(const std::vector<std::vector<double>>& fractional,
                                  Rng& rng);

// Reassigns dropped rows to the cloud and moves the largest-workload task
// off any overloaded edge until every capacity holds. The cloud always
// absorbs, so the result satisfies the capacity constraint exactly.
RoundingOutcome repair_capacity(RoundingOutcome outcome,
                                const std::vector<MlTask>& tasks,
                                const std::vector<Location>& locations);

struct BruteForceResult {
  std::vector<int> assignment;
  double purchase_kg = 0.0;
  double objective = 0.0;
};

// Exhaustive optimum of the integral slot problem; enumeration is capped at
// 8 tasks and 5 locations.
BruteForceResult brute_force_opt(const AssignmentLp& problem);

inline constexpr int kBruteForceMaxTasks = 8;
inline constexpr int kBruteForceMaxLocations = 5;

}  // namespace carbon_sched
