#include "core/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/error.hpp"

namespace carbon_sched {

namespace {

bool near(double v, double target) { return std::abs(v - target) <= kIntegralSnap; }

int cloud_index(const std::vector<Location>& locations) {
  for (size_t j = 0; j < locations.size(); ++j) {
    if (locations[j].kind == LocationKind::kCloud) return static_cast<int>(j);
  }
  throw Error(ErrorCode::kValidation, "location set has no cloud");
}

void validate_fractional(const std::vector<std::vector<double>>& fractional) {
  for (size_t i = 0; i < fractional.size(); ++i) {
    double sum = 0.0;
    for (double v : fractional[i]) {
      if (v < -kIntegralSnap || v > 1.0 + kIntegralSnap || !std::isfinite(v)) {
        throw Error(ErrorCode::kValidation,
                    "fractional entry out of [0,1] in row " + std::to_string(i));
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      throw Error(ErrorCode::kValidation,
                  "fractional row " + std::to_string(i) + " sums to " +
                      std::to_string(sum) + ", expected 1");
    }
  }
}

}  // namespace

std::vector<std::vector<uint8_t>> RoundingOutcome::to_matrix(int n_locations) const {
  std::vector<std::vector<uint8_t>> m(assignment.size(),
                                      std::vector<uint8_t>(n_locations, 0));
  for (size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] >= 0) m[i][assignment[i]] = 1;
  }
  return m;
}

std::pair<double, double> pair_adjust(double p1, double p2, double s1, double s2,
                                      Rng& rng) {
  if (!(s1 > 0.0) || !(s2 > 0.0)) {
    throw Error(ErrorCode::kValidation, "pair weights must be positive");
  }
  if (p1 <= 0.0 || p1 >= 1.0 || p2 <= 0.0 || p2 >= 1.0) {
    throw Error(ErrorCode::kValidation, "pair probabilities must lie strictly in (0,1)");
  }
  const double ratio = s2 / s1;
  const double eps1 = std::min(1.0 - p1, ratio * p2);
  const double eps2 = std::min(p1, ratio * (1.0 - p2));
  const double total = eps1 + eps2;
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kValidation, "degenerate pair adjustment");
  }
  if (rng.next_unit() < eps2 / total) {
    return {p1 + eps1, p2 - eps1 / ratio};
  }
  return {p1 - eps2, p2 + eps2 / ratio};
}

RoundingOutcome dependent_round(const std::vector<std::vector<double>>& fractional,
                                const std::vector<MlTask>& tasks,
                                const std::vector<Location>& locations, Rng& rng) {
  if (fractional.size() != tasks.size()) {
    throw Error(ErrorCode::kValidation, "fractional rows do not match task count");
  }
  validate_fractional(fractional);

  const int m = static_cast<int>(locations.size());
  RoundingOutcome out;
  out.assignment.assign(tasks.size(), -1);
  out.dropped.assign(tasks.size(), 0);

  std::vector<double> load(locations.size(), 0.0);

  for (size_t i = 0; i < tasks.size(); ++i) {
    std::vector<double> p(fractional[i]);
    std::vector<int> floating;
    for (int j = 0; j < m; ++j) {
      if (near(p[j], 0.0)) {
        p[j] = 0.0;
      } else if (near(p[j], 1.0)) {
        p[j] = 1.0;
      } else {
        floating.push_back(j);
      }
    }

    const double weight = tasks[i].workload_cycles;
    while (floating.size() > 1) {
      const size_t a = rng.below(floating.size());
      size_t b = rng.below(floating.size() - 1);
      if (b >= a) ++b;
      const int m1 = floating[a];
      const int m2 = floating[b];

      const auto adjusted = pair_adjust(p[m1], p[m2], weight, weight, rng);
      p[m1] = adjusted.first;
      p[m2] = adjusted.second;
      ++out.iterations;

      for (int idx : {m1, m2}) {
        if (near(p[idx], 0.0)) {
          p[idx] = 0.0;
        } else if (near(p[idx], 1.0)) {
          p[idx] = 1.0;
        } else {
          continue;
        }
        floating.erase(std::find(floating.begin(), floating.end(), idx));
      }
    }

    if (floating.size() == 1) {
      // Last floating entry: take it unless that overloads its edge given
      // the tasks already placed.
      const int j = floating.front();
      const bool fits = locations[j].unbounded() ||
                        load[j] + tasks[i].workload_cycles <= locations[j].capacity_cycles;
      p[j] = fits ? 1.0 : 0.0;
    }

    int chosen = -1;
    for (int j = 0; j < m; ++j) {
      if (p[j] == 1.0) { chosen = j; break; }
    }
    if (chosen < 0) {
      out.dropped[i] = 1;
      ++out.orphan_count;
    } else {
      out.assignment[i] = chosen;
      load[chosen] += tasks[i].workload_cycles;
    }
  }
  return out;
}

RoundingOutcome independent_round(const std::vector<std::vector<double>>& fractional,
                                  Rng& rng) {
  validate_fractional(fractional);
  RoundingOutcome out;
  out.assignment.assign(fractional.size(), -1);
  out.dropped.assign(fractional.size(), 0);
  for (size_t i = 0; i < fractional.size(); ++i) {
    double sum = 0.0;
    for (double v : fractional[i]) sum += std::max(v, 0.0);
    const double draw = rng.next_unit() * sum;
    double acc = 0.0;
    for (size_t j = 0; j < fractional[i].size(); ++j) {
      acc += std::max(fractional[i][j], 0.0);
      if (draw < acc) {
        out.assignment[i] = static_cast<int>(j);
        break;
      }
    }
    if (out.assignment[i] < 0) {
      out.assignment[i] = static_cast<int>(fractional[i].size()) - 1;
    }
  }
  return out;
}

RoundingOutcome repair_capacity(RoundingOutcome outcome,
                                const std::vector<MlTask>& tasks,
                                const std::vector<Location>& locations) {
  const int cloud = cloud_index(locations);

  for (size_t i = 0; i < outcome.assignment.size(); ++i) {
    if (outcome.assignment[i] < 0) {
      outcome.assignment[i] = cloud;
      if (i < outcome.dropped.size()) outcome.dropped[i] = 0;
      outcome.repairs.push_back({static_cast<int>(i), -1, cloud});
    }
  }

  std::vector<double> load(locations.size(), 0.0);
  for (size_t i = 0; i < outcome.assignment.size(); ++i) {
    load[outcome.assignment[i]] += tasks[i].workload_cycles;
  }

  for (size_t j = 0; j < locations.size(); ++j) {
    if (locations[j].unbounded()) continue;
    while (load[j] > locations[j].capacity_cycles) {
      int heaviest = -1;
      for (size_t i = 0; i < outcome.assignment.size(); ++i) {
        if (outcome.assignment[i] != static_cast<int>(j)) continue;
        if (heaviest < 0 ||
            tasks[i].workload_cycles > tasks[heaviest].workload_cycles) {
          heaviest = static_cast<int>(i);
        }
      }
      if (heaviest < 0) {
        throw Error(ErrorCode::kInternal, "overloaded edge with no tasks to move");
      }
      outcome.assignment[heaviest] = cloud;
      load[j] -= tasks[heaviest].workload_cycles;
      load[cloud] += tasks[heaviest].workload_cycles;
      outcome.repairs.push_back({heaviest, static_cast<int>(j), cloud});
    }
  }
  return outcome;
}

BruteForceResult brute_force_opt(const AssignmentLp& problem) {
  const int n = problem.n_tasks;
  const int m = problem.n_locations;
  if (n > kBruteForceMaxTasks || m > kBruteForceMaxLocations) {
    throw Error(ErrorCode::kSizeLimit,
                "exhaustive search is capped at " + std::to_string(kBruteForceMaxTasks) +
                    " tasks and " + std::to_string(kBruteForceMaxLocations) +
                    " locations");
  }

  BruteForceResult best;
  best.objective = std::numeric_limits<double>::infinity();

  std::vector<int> assignment(n, -1);
  std::vector<double> load(m, 0.0);

  auto recurse = [&](auto&& self, int task) -> void {
    if (task == n) {
      const double purchase = minimal_cer(assignment, problem.emission_kg,
                                          problem.future_share_kg, problem.frame_start,
                                          problem.frame_length);
      const double value = assignment_objective(problem, assignment, purchase);
      if (value < best.objective) {
        best.objective = value;
        best.assignment = assignment;
        best.purchase_kg = purchase;
      }
      return;
    }
    for (int j = 0; j < m; ++j) {
      const bool fits =
          std::isinf(problem.capacity_cycles[j]) ||
          load[j] + problem.workload_cycles[task] <= problem.capacity_cycles[j];
      if (!fits) continue;
      assignment[task] = j;
      load[j] += problem.workload_cycles[task];
      self(self, task + 1);
      load[j] -= problem.workload_cycles[task];
      assignment[task] = -1;
    }
  };
  recurse(recurse, 0);

  if (!std::isfinite(best.objective)) {
    throw Error(ErrorCode::kInternal, "no feasible integral assignment exists");
  }
  return best;
}

}  // namespace carbon_sched
