#include "core/units.hpp"

#include <cmath>

#include "core/error.hpp"

namespace carbon_sched {

double intensity_from_trace_units(double g_per_kwh) {
  if (!(g_per_kwh >= 0.0) || !std::isfinite(g_per_kwh)) {
    throw Error(ErrorCode::kValidation,
                "carbon intensity must be a finite non-negative g/kWh value");
  }
  return g_per_kwh * kKgPerJouleFromGramPerKwh;
}

double intensity_to_trace_units(double kg_per_j) {
  if (!(kg_per_j >= 0.0) || !std::isfinite(kg_per_j)) {
    throw Error(ErrorCode::kValidation,
                "carbon intensity must be a finite non-negative kg/J value");
  }
  return kg_per_j * kGramPerKwhFromKgPerJoule;
}

}  // namespace carbon_sched
