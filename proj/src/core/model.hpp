#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace carbon_sched {

// One arriving inference job.
struct MlTask {
  uint64_t id = 0;
  double input_bits = 0.0;       // H_i, whole bits
  double workload_cycles = 0.0;  // F_i, whole CPU cycles
};

enum class LocationKind { kCloud, kEdge };

// An offloading target. Index 0 is always the cloud.
struct Location {
  int id = 0;
  LocationKind kind = LocationKind::kEdge;
  double accuracy_loss = 0.0;    // fraction in [0,1]
  double energy_per_bit = 0.0;   // joules per input bit
  double capacity_cycles = 0.0;  // per-slot CPU cycles; +inf for the cloud

  bool unbounded() const {
    return capacity_cycles == std::numeric_limits<double>::infinity();
  }
};

// Everything revealed at one slot.
struct SlotObservation {
  int64_t slot = 0;
  std::vector<double> carbon_intensity;  // kgCO2/J, one entry per location
  double spot_price = 0.0;               // $/kgCO2
  double future_price = 0.0;             // $/kgCO2, meaningful at frame starts
  std::vector<MlTask> tasks;
};

// Binary offloading matrix plus the CER amounts available this slot.
struct SlotDecision {
  std::vector<std::vector<uint8_t>> assignment;  // tasks x locations
  std::vector<uint8_t> dropped;                  // per-task repair flag
  double cer_spot_kg = 0.0;                      // bought on demand this slot
  double cer_future_share_kg = 0.0;              // this slot's share of r_lt

  int location_of(size_t task) const;  // -1 when the row is all zero
};

struct FrameDecision {
  double cer_future_total_kg = 0.0;  // r_lt bought at the frame start
  SlotDecision slot_decision;        // decision for the frame-start slot
};

enum class PriceDistribution { kUniform, kGaussian };

struct PriceModel {
  PriceDistribution kind = PriceDistribution::kUniform;
  double future_mean = 1.5;   // E[R_lt]
  double future_spread = 0.5; // uniform half-width, or gaussian sigma
  double spot_mean = 3.0;     // E[R_rt]
  double spot_spread = 1.0;
};

enum class FaultMode { kNone, kCorruptAssignment, kSkipRepair };

// Testing hook: deliberately break a decision (or skip the repair pass) so
// the engine's constraint gate and abort path can be exercised end to end.
struct FaultInjection {
  FaultMode mode = FaultMode::kNone;
  int64_t slot = 0;
};

struct SimConfig {
  int frame_length = 15;   // T slots per frame
  int frame_count = 100;   // K frames
  double budget_per_slot = 3.25e8;  // cost units
  double lyapunov_v = 3e8;          // dimensionless priority knob

  int location_count = 5;  // one cloud + (count-1) edges
  double cloud_accuracy_loss = 0.02;
  double edge_accuracy_loss_range[2] = {0.10, 0.15};
  double cloud_energy_per_bit_range[2] = {3e-4, 5e-4};
  double edge_energy_per_bit_range[2] = {2e-5, 5e-5};
  double edge_capacity_cycles_range[2] = {2e12, 5e12};

  int tasks_per_slot_range[2] = {1, 10};  // upper entry is N_max
  double task_input_bits_range[2] = {1e8, 1e9};
  double task_workload_cycles_range[2] = {5e11, 1e12};

  PriceModel price_model;
  uint64_t seed = 1;
  FaultInjection fault_injection;

  int total_slots() const { return frame_length * frame_count; }
  int max_tasks_per_slot() const { return tasks_per_slot_range[1]; }

  // Effective dollar-denominated controller parameters.
  double budget_dollars() const;
  double v_dollars() const;

  void validate() const;  // throws Error(kValidation) with the failing key
  std::string to_json() const;
};

// Parses a config JSON document; unknown keys are rejected.
SimConfig config_from_json(const std::string& text);
SimConfig config_from_file(const std::string& path);

// Applies a single "key=value" style override (used for flag > file
// precedence and sweep cells). Understands the sweep parameter names.
void apply_override(SimConfig& cfg, const std::string& key, const std::string& value);

// Names accepted by apply_override / sweeps.
const std::vector<std::string>& sweepable_parameters();

}  // namespace carbon_sched
