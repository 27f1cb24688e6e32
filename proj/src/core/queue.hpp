#pragma once

#include <span>
#include <vector>

namespace carbon_sched {

// Budget-overshoot bookkeeping state. The backlog grows by the amount the
// slot's purchase cost exceeded the per-slot budget and is clamped at zero.
struct VirtualQueue {
  double backlog = 0.0;          // dollars
  std::vector<double> history;   // backlog after each update

  void push(double slot_cost, double budget);
};

// One queue step: max(q + slot_cost - budget, 0).
double queue_update(double q, double slot_cost, double budget);

// Quadratic potential q^2 / 2.
double lyapunov_value(double q);

struct BoundConstants {
  double b1 = 0.0;     // (c_max^2 + r_bug^2) / 2
  double b2 = 0.0;     // b1 + c_max^2 (T-1) / 2
  double c_max = 0.0;  // largest observed slot cost
  double r_bug = 0.0;  // per-slot budget
};

BoundConstants bound_constants(double c_max, double budget, int frame_length);

struct FrameBoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

// Sample-path drift-plus-penalty inequality over one frame. `queue` holds
// the T+1 backlog values Q(t)..Q(t+T); `losses` and `costs` hold the T
// per-slot accuracy losses and purchase costs.
FrameBoundCheck verify_frame_bound(std::span<const double> queue,
                                   std::span<const double> losses,
                                   std::span<const double> costs, double v,
                                   const BoundConstants& constants);

}  // namespace carbon_sched
