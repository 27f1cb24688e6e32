#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/model.hpp"
#include "core/rng.hpp"

namespace carbon_sched {

// Validated carbon-intensity trace: strict 30-minute cadence, a fixed
// region set per timestamp, intensities stored in canonical kgCO2/J.
struct TraceTable {
  std::vector<int64_t> slot_epoch_s;            // one per slot, strictly +1800
  std::vector<std::string> region_ids;          // first-appearance order
  std::vector<std::vector<double>> intensity;   // [slot][region], kg/J
  std::vector<double> region_mean;              // kg/J

  size_t slot_count() const { return slot_epoch_s.size(); }
  size_t region_count() const { return region_ids.size(); }
};

inline constexpr int64_t kSlotSeconds = 1800;

// Loads and validates a trace CSV (header
// `timestamp,region_id,intensity_g_per_kwh`). Errors name the line.
TraceTable load_trace(const std::string& path);
TraceTable trace_from_string(const std::string& text, const std::string& name);

// Region index backing each location. The cloud gets the region with the
// highest mean intensity; edges take the remaining regions round-robin.
std::vector<int> map_regions(const TraceTable& trace, int location_count);

struct PriceSeries {
  std::vector<double> future;  // R_lt, read at frame starts
  std::vector<double> spot;    // R_rt
  int truncation_redraws = 0;  // gaussian draws <= 0 that were redrawn
};

PriceSeries gen_prices(const PriceModel& model, int n_slots, Rng& rng);

// Per-slot task lists; counts uniform on the configured range, sizes and
// workloads uniform on their ranges and rounded to whole bits/cycles (so
// capacity sums stay exact in doubles).
std::vector<std::vector<MlTask>> gen_tasks(Rng& rng, const SimConfig& cfg);

// One cloud (unbounded) plus location_count-1 edges drawn from the
// configured ranges.
std::vector<Location> gen_locations(const SimConfig& cfg, Rng& rng);

// Everything a run consumes, generated up front from named sub-streams of
// the root seed and immutable afterwards.
struct Scenario {
  std::vector<Location> locations;
  std::vector<std::vector<double>> intensity;   // [slot][location], kg/J
  PriceSeries prices;
  std::vector<std::vector<MlTask>> tasks;
  uint64_t task_stream_hash = 0;
  bool trace_wrapped = false;

  SlotObservation observation(int64_t slot) const;
};

Scenario build_scenario(const SimConfig& cfg, const TraceTable& trace, uint64_t seed);

}  // namespace carbon_sched
