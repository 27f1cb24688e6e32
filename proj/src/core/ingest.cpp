#include "core/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "core/error.hpp"
#include "core/log.hpp"
#include "core/units.hpp"

namespace carbon_sched {

namespace {

[[noreturn]] void trace_error(const std::string& name, size_t line, const std::string& what) {
  throw Error(ErrorCode::kValidation,
              name + ":" + std::to_string(line) + ": " + what);
}

// Days since the epoch for a civil date (Howard Hinnant's algorithm).
int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

bool parse_timestamp(const std::string& text, int64_t* epoch_s) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  char z = 0;
  if (std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi, &s,
                  &z) != 7 || z != 'Z') {
    return false;
  }
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60) return false;
  *epoch_s = days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
  return true;
}

uint64_t fnv1a(uint64_t hash, uint64_t value) {
  for (int b = 0; b < 8; ++b) {
    hash ^= (value >> (8 * b)) & 0xff;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace

TraceTable trace_from_string(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;

  if (!std::getline(in, line)) trace_error(name, 1, "empty trace file");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "timestamp,region_id,intensity_g_per_kwh") {
    trace_error(name, line_no, "expected header 'timestamp,region_id,intensity_g_per_kwh'");
  }

  TraceTable table;
  std::vector<uint8_t> seen_in_slot;
  int64_t current_epoch = std::numeric_limits<int64_t>::min();

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    const size_t c1 = line.find(',');
    const size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c2 == std::string::npos) trace_error(name, line_no, "expected 3 comma-separated fields");
    const std::string ts = line.substr(0, c1);
    const std::string region = line.substr(c1 + 1, c2 - c1 - 1);
    const std::string value_text = line.substr(c2 + 1);
    if (region.empty()) trace_error(name, line_no, "empty region id");

    int64_t epoch = 0;
    if (!parse_timestamp(ts, &epoch)) {
      trace_error(name, line_no, "malformed ISO-8601 UTC timestamp '" + ts + "'");
    }

    double g_per_kwh = 0.0;
    try {
      size_t pos = 0;
      g_per_kwh = std::stod(value_text, &pos);
      if (pos != value_text.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      trace_error(name, line_no, "malformed intensity '" + value_text + "'");
    }
    if (!(g_per_kwh >= 0.0) || !std::isfinite(g_per_kwh)) {
      trace_error(name, line_no, "intensity must be non-negative");
    }

    if (epoch != current_epoch) {
      // Starting a new slot block: the previous one must have been complete.
      if (!table.slot_epoch_s.empty()) {
        if (epoch < current_epoch) {
          trace_error(name, line_no, "timestamps are not non-decreasing");
        }
        if (epoch - current_epoch != kSlotSeconds) {
          trace_error(name, line_no,
                      "cadence gap: expected a 30-minute step after " + ts);
        }
        for (size_t r = 0; r < table.region_count(); ++r) {
          if (!seen_in_slot[r]) {
            trace_error(name, line_no, "previous slot is missing region '" +
                                           table.region_ids[r] + "'");
          }
        }
      }
      table.slot_epoch_s.push_back(epoch);
      table.intensity.emplace_back(table.region_count(),
                                   std::numeric_limits<double>::quiet_NaN());
      std::fill(seen_in_slot.begin(), seen_in_slot.end(), 0);
      current_epoch = epoch;
    }

    size_t region_idx = table.region_count();
    for (size_t r = 0; r < table.region_count(); ++r) {
      if (table.region_ids[r] == region) { region_idx = r; break; }
    }
    if (region_idx == table.region_count()) {
      if (table.slot_epoch_s.size() > 1) {
        trace_error(name, line_no, "region '" + region + "' appears mid-file");
      }
      table.region_ids.push_back(region);
      seen_in_slot.push_back(0);
      for (auto& row : table.intensity) {
        row.resize(table.region_count(), std::numeric_limits<double>::quiet_NaN());
      }
    }
    if (seen_in_slot[region_idx]) {
      trace_error(name, line_no, "duplicate (timestamp, region) row");
    }
    seen_in_slot[region_idx] = 1;
    table.intensity.back()[region_idx] = intensity_from_trace_units(g_per_kwh);
  }

  if (table.slot_epoch_s.empty()) trace_error(name, line_no, "trace has no data rows");
  for (size_t r = 0; r < table.region_count(); ++r) {
    if (!seen_in_slot[r]) {
      trace_error(name, line_no, "final slot is missing region '" + table.region_ids[r] + "'");
    }
  }

  table.region_mean.assign(table.region_count(), 0.0);
  for (const auto& row : table.intensity) {
    for (size_t r = 0; r < row.size(); ++r) table.region_mean[r] += row[r];
  }
  for (double& m : table.region_mean) m /= static_cast<double>(table.slot_count());
  return table;
}

TraceTable load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open trace file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return trace_from_string(buffer.str(), path);
}

std::vector<int> map_regions(const TraceTable& trace, int location_count) {
  int cloud_region = 0;
  for (size_t r = 1; r < trace.region_count(); ++r) {
    if (trace.region_mean[r] > trace.region_mean[cloud_region]) {
      cloud_region = static_cast<int>(r);
    }
  }
  std::vector<int> edge_regions;
  for (size_t r = 0; r < trace.region_count(); ++r) {
    if (static_cast<int>(r) != cloud_region) edge_regions.push_back(static_cast<int>(r));
  }
  if (edge_regions.empty()) edge_regions.push_back(cloud_region);

  std::vector<int> mapping(location_count);
  mapping[0] = cloud_region;
  for (int j = 1; j < location_count; ++j) {
    mapping[j] = edge_regions[(j - 1) % edge_regions.size()];
  }
  return mapping;
}

PriceSeries gen_prices(const PriceModel& model, int n_slots, Rng& rng) {
  PriceSeries series;
  series.future.reserve(n_slots);
  series.spot.reserve(n_slots);
  auto draw = [&](double mean, double spread) {
    if (model.kind == PriceDistribution::kUniform) {
      return rng.uniform(mean - spread, mean + spread);
    }
    double value = rng.gaussian(mean, spread);
    while (value <= 0.0) {
      ++series.truncation_redraws;
      value = rng.gaussian(mean, spread);
    }
    return value;
  };
  for (int t = 0; t < n_slots; ++t) {
    series.future.push_back(draw(model.future_mean, model.future_spread));
    series.spot.push_back(draw(model.spot_mean, model.spot_spread));
  }
  return series;
}

std::vector<std::vector<MlTask>> gen_tasks(Rng& rng, const SimConfig& cfg) {
  std::vector<std::vector<MlTask>> per_slot(cfg.total_slots());
  uint64_t next_id = 0;
  const int lo = cfg.tasks_per_slot_range[0];
  const int hi = cfg.tasks_per_slot_range[1];
  for (auto& slot_tasks : per_slot) {
    const int count = lo + static_cast<int>(rng.below(static_cast<uint64_t>(hi - lo + 1)));
    slot_tasks.reserve(count);
    for (int k = 0; k < count; ++k) {
      MlTask task;
      task.id = next_id++;
      task.input_bits = std::round(
          rng.uniform(cfg.task_input_bits_range[0], cfg.task_input_bits_range[1]));
      task.workload_cycles = std::round(rng.uniform(cfg.task_workload_cycles_range[0],
                                                    cfg.task_workload_cycles_range[1]));
      slot_tasks.push_back(task);
    }
  }
  return per_slot;
}

std::vector<Location> gen_locations(const SimConfig& cfg, Rng& rng) {
  std::vector<Location> locations;
  locations.reserve(cfg.location_count);

  Location cloud;
  cloud.id = 0;
  cloud.kind = LocationKind::kCloud;
  cloud.accuracy_loss = cfg.cloud_accuracy_loss;
  cloud.energy_per_bit =
      rng.uniform(cfg.cloud_energy_per_bit_range[0], cfg.cloud_energy_per_bit_range[1]);
  cloud.capacity_cycles = std::numeric_limits<double>::infinity();
  locations.push_back(cloud);

  for (int j = 1; j < cfg.location_count; ++j) {
    Location edge;
    edge.id = j;
    edge.kind = LocationKind::kEdge;
    edge.accuracy_loss =
        rng.uniform(cfg.edge_accuracy_loss_range[0], cfg.edge_accuracy_loss_range[1]);
    edge.energy_per_bit =
        rng.uniform(cfg.edge_energy_per_bit_range[0], cfg.edge_energy_per_bit_range[1]);
    edge.capacity_cycles = std::round(rng.uniform(cfg.edge_capacity_cycles_range[0],
                                                  cfg.edge_capacity_cycles_range[1]));
    locations.push_back(edge);
  }
  return locations;
}

SlotObservation Scenario::observation(int64_t slot) const {
  SlotObservation obs;
  obs.slot = slot;
  obs.carbon_intensity = intensity[slot];
  obs.spot_price = prices.spot[slot];
  obs.future_price = prices.future[slot];
  obs.tasks = tasks[slot];
  return obs;
}

Scenario build_scenario(const SimConfig& cfg, const TraceTable& trace, uint64_t seed) {
  cfg.validate();
  Scenario scenario;

  Rng location_rng = Rng::substream(seed, "locations");
  scenario.locations = gen_locations(cfg, location_rng);

  Rng price_rng = Rng::substream(seed, "prices");
  scenario.prices = gen_prices(cfg.price_model, cfg.total_slots(), price_rng);

  Rng task_rng = Rng::substream(seed, "tasks");
  scenario.tasks = gen_tasks(task_rng, cfg);

  const std::vector<int> region_of = map_regions(trace, cfg.location_count);
  const size_t trace_slots = trace.slot_count();
  if (static_cast<size_t>(cfg.total_slots()) > trace_slots) {
    scenario.trace_wrapped = true;
    log_warn("trace covers " + std::to_string(trace_slots) + " slots but the run needs " +
             std::to_string(cfg.total_slots()) + "; wrapping cyclically");
  }
  scenario.intensity.assign(cfg.total_slots(), std::vector<double>(cfg.location_count, 0.0));
  for (int t = 0; t < cfg.total_slots(); ++t) {
    const auto& row = trace.intensity[t % trace_slots];
    for (int j = 0; j < cfg.location_count; ++j) {
      scenario.intensity[t][j] = row[region_of[j]];
    }
  }

  uint64_t hash = 0xcbf29ce484222325ULL;
  for (int t = 0; t < cfg.total_slots(); ++t) {
    for (const auto& task : scenario.tasks[t]) {
      hash = fnv1a(hash, static_cast<uint64_t>(t));
      hash = fnv1a(hash, task.id);
      hash = fnv1a(hash, static_cast<uint64_t>(task.input_bits));
      hash = fnv1a(hash, static_cast<uint64_t>(task.workload_cycles));
    }
  }
  scenario.task_stream_hash = hash;
  return scenario;
}

}  // namespace carbon_sched
