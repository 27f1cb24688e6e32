#include "core/queue.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"

namespace carbon_sched {

double queue_update(double q, double slot_cost, double budget) {
  if (!(q >= 0.0)) {
    throw Error(ErrorCode::kValidation, "queue backlog must be non-negative");
  }
  if (!(slot_cost >= 0.0)) {
    throw Error(ErrorCode::kValidation, "slot cost must be non-negative");
  }
  if (!(budget > 0.0)) {
    throw Error(ErrorCode::kValidation, "budget must be positive");
  }
  return std::max(q + slot_cost - budget, 0.0);
}

double lyapunov_value(double q) { return 0.5 * q * q; }

void VirtualQueue::push(double slot_cost, double budget) {
  backlog = queue_update(backlog, slot_cost, budget);
  history.push_back(backlog);
}

BoundConstants bound_constants(double c_max, double budget, int frame_length) {
  if (!(c_max >= 0.0) || !(budget > 0.0) || frame_length < 1) {
    throw Error(ErrorCode::kValidation, "bound_constants needs c_max >= 0, budget > 0, T >= 1");
  }
  BoundConstants k;
  k.c_max = c_max;
  k.r_bug = budget;
  k.b1 = 0.5 * (c_max * c_max + budget * budget);
  k.b2 = k.b1 + 0.5 * c_max * c_max * static_cast<double>(frame_length - 1);
  return k;
}

FrameBoundCheck verify_frame_bound(std::span<const double> queue,
                                   std::span<const double> losses,
                                   std::span<const double> costs, double v,
                                   const BoundConstants& constants) {
  const size_t frame_len = losses.size();
  if (frame_len == 0 || costs.size() != frame_len || queue.size() != frame_len + 1) {
    throw Error(ErrorCode::kValidation,
                "frame trajectory must hold T losses, T costs and T+1 queue values");
  }
  double loss_sum = 0.0;
  double queue_weighted = 0.0;
  for (size_t i = 0; i < frame_len; ++i) {
    loss_sum += losses[i];
    queue_weighted += queue.front() * (costs[i] - constants.r_bug);
  }

  FrameBoundCheck check;
  check.lhs = lyapunov_value(queue.back()) - lyapunov_value(queue.front()) + v * loss_sum;
  check.rhs = constants.b2 * static_cast<double>(frame_len) + v * loss_sum + queue_weighted;
  const double tol = 1e-9 * std::max(1.0, std::max(std::abs(check.lhs), std::abs(check.rhs)));
  check.pass = check.lhs <= check.rhs + tol;
  return check;
}

}  // namespace carbon_sched
