#pragma once

namespace carbon_sched {

// Canonical units throughout the library: bits, CPU cycles, joules, kgCO2,
// dollars. One slot is 30 simulated minutes, matching the trace cadence.

// Trace files carry intensities in gCO2/kWh; canonical storage is kgCO2/J.
inline constexpr double kKgPerJouleFromGramPerKwh = 1e-3 / 3.6e6;
inline constexpr double kGramPerKwhFromKgPerJoule = 3.6e6 / 1e-3;

// Budgets, prices-applied-to-CER totals, queue backlogs and the V knob in
// configs and reports are quoted in "cost units": the numbers produced by
// pricing CER amounts on the raw g/kWh trace scale. One cost unit equals
// kDollarsPerCostUnit dollars; the conversion mirrors the intensity one.
inline constexpr double kDollarsPerCostUnit = kKgPerJouleFromGramPerKwh;

// Dollar weight applied per unit of configured V when trading accuracy loss
// against budget pressure inside the controller. Calibrated so the
// documented V range (1e8..1e9) sweeps the budget-tension regime of the
// bundled defaults; see the units section of the README.
inline constexpr double kVWeightDollars = kDollarsPerCostUnit * 10.0;

// gCO2/kWh -> kgCO2/J. Rejects negative input.
double intensity_from_trace_units(double g_per_kwh);

// kgCO2/J -> gCO2/kWh (exact inverse of the above).
double intensity_to_trace_units(double kg_per_j);

inline double dollars_to_cost_units(double dollars) {
  return dollars / kDollarsPerCostUnit;
}

inline double cost_units_to_dollars(double cost_units) {
  return cost_units * kDollarsPerCostUnit;
}

}  // namespace carbon_sched
