#pragma once

#include <memory>
#include <string>
#include <vector>

#include "core/model.hpp"
#include "core/rng.hpp"

namespace carbon_sched {

// Mutable per-run controller state. Owned by exactly one simulation run;
// policies read and update it strictly slot by slot.
struct PolicyRuntime {
  double queue = 0.0;               // live backlog, $
  double frozen_queue = 0.0;        // backlog captured at the frame start
  double frame_share_kg = 0.0;      // r_lt(t) / T for the governing frame
  double frame_future_price = 0.0;  // R_lt(t) locked at the frame start
  double frame_future_total_kg = 0.0;
  double cumulative_cost = 0.0;     // $ spent so far (for Greedy's ledger)
  int64_t slots_elapsed = 0;
  double v_weight = 0.0;            // $ per unit accuracy loss
  double budget = 0.0;              // $ per slot
  int frame_length = 1;
  bool repair_enabled = true;
  Rng rounding_rng{0};
  const std::vector<Location>* locations = nullptr;
};

struct PolicyDecision {
  SlotDecision decision;
  int orphans = 0;
  int repair_moves = 0;
  long lp_iterations = 0;
};

class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  virtual PolicyDecision decide(const SlotObservation& obs, PolicyRuntime& rt,
                                bool frame_start) = 0;
};

// Two-timescale controller: at frame starts it plans the future CER
// purchase jointly with the assignment; mid-frame it tops up on the spot
// market with the backlog frozen at its frame-start value.
class TtoaPolicy : public Policy {
 public:
  std::string name() const override { return "ttoa"; }
  PolicyDecision decide(const SlotObservation& obs, PolicyRuntime& rt,
                        bool frame_start) override;

  PolicyDecision frame_start(const SlotObservation& obs, PolicyRuntime& rt);
  PolicyDecision slot(const SlotObservation& obs, PolicyRuntime& rt);
};

// Everything to the cloud, all CER bought on demand.
class ACloudPolicy : public Policy {
 public:
  std::string name() const override { return "acloud"; }
  PolicyDecision decide(const SlotObservation& obs, PolicyRuntime& rt,
                        bool frame_start) override;
};

// Single-timescale variant: the slot-dispatch solve every slot with no
// frame share, spot purchases only, live backlog.
class OTimePolicy : public Policy {
 public:
  std::string name() const override { return "otime"; }
  PolicyDecision decide(const SlotObservation& obs, PolicyRuntime& rt,
                        bool frame_start) override;
};

// Arrival-order heuristic: best accuracy while the running time-averaged
// spend stays within budget, cheapest feasible emission once it would not.
class GreedyPolicy : public Policy {
 public:
  std::string name() const override { return "greedy"; }
  PolicyDecision decide(const SlotObservation& obs, PolicyRuntime& rt,
                        bool frame_start) override;
};

std::unique_ptr<Policy> make_policy(const std::string& name);

const std::vector<std::string>& policy_names();

}  // namespace carbon_sched
