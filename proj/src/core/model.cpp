#include "core/model.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "core/error.hpp"
#include "core/units.hpp"

namespace carbon_sched {

using nlohmann::json;

int SlotDecision::location_of(size_t task) const {
  const auto& row = assignment[task];
  for (size_t j = 0; j < row.size(); ++j) {
    if (row[j] != 0) return static_cast<int>(j);
  }
  return -1;
}

double SimConfig::budget_dollars() const {
  return budget_per_slot * kDollarsPerCostUnit;
}

double SimConfig::v_dollars() const { return lyapunov_v * kVWeightDollars; }

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::kValidation, message);
}

void check_range(const double (&range)[2], const std::string& key, bool positive) {
  require(std::isfinite(range[0]) && std::isfinite(range[1]),
          key + " must be finite");
  require(range[0] <= range[1], key + " must satisfy lo <= hi");
  if (positive) require(range[0] > 0.0, key + " must be positive");
}

PriceDistribution parse_distribution(const std::string& name) {
  if (name == "uniform") return PriceDistribution::kUniform;
  if (name == "gaussian") return PriceDistribution::kGaussian;
  throw Error(ErrorCode::kValidation,
              "price_model.kind must be 'uniform' or 'gaussian', got '" + name + "'");
}

FaultMode parse_fault_mode(const std::string& name) {
  if (name == "none") return FaultMode::kNone;
  if (name == "corrupt_assignment") return FaultMode::kCorruptAssignment;
  if (name == "skip_repair") return FaultMode::kSkipRepair;
  throw Error(ErrorCode::kValidation, "unknown fault_injection.mode '" + name + "'");
}

void reject_unknown_keys(const json& object, const std::vector<std::string>& known,
                         const std::string& scope) {
  for (auto it = object.begin(); it != object.end(); ++it) {
    bool found = false;
    for (const auto& key : known) {
      if (it.key() == key) { found = true; break; }
    }
    if (!found) {
      throw Error(ErrorCode::kValidation,
                  "unknown config key '" + scope + it.key() + "'");
    }
  }
}

void read_pair(const json& j, const std::string& key, double (&out)[2]) {
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 2) {
    throw Error(ErrorCode::kValidation, key + " must be a [lo, hi] pair");
  }
  out[0] = v[0].get<double>();
  out[1] = v[1].get<double>();
}

}  // namespace

void SimConfig::validate() const {
  require(frame_length >= 1, "frame_length must be >= 1");
  require(frame_count >= 1, "frame_count must be >= 1");
  require(std::isfinite(budget_per_slot) && budget_per_slot > 0.0,
          "budget_per_slot must be positive");
  require(std::isfinite(lyapunov_v) && lyapunov_v >= 0.0,
          "lyapunov_v must be >= 0");
  require(location_count >= 2, "location_count must be >= 2 (cloud + edges)");
  require(cloud_accuracy_loss >= 0.0 && cloud_accuracy_loss <= 1.0,
          "cloud_accuracy_loss must be in [0,1]");
  check_range(edge_accuracy_loss_range, "edge_accuracy_loss_range", false);
  require(edge_accuracy_loss_range[0] >= 0.0 && edge_accuracy_loss_range[1] <= 1.0,
          "edge_accuracy_loss_range must lie in [0,1]");
  require(cloud_accuracy_loss < edge_accuracy_loss_range[0],
          "cloud accuracy loss must be below every edge accuracy loss");
  check_range(cloud_energy_per_bit_range, "cloud_energy_per_bit_range", true);
  check_range(edge_energy_per_bit_range, "edge_energy_per_bit_range", true);
  check_range(edge_capacity_cycles_range, "edge_capacity_cycles_range", true);
  require(tasks_per_slot_range[0] >= 0, "tasks_per_slot_range lo must be >= 0");
  require(tasks_per_slot_range[0] <= tasks_per_slot_range[1],
          "tasks_per_slot_range must satisfy lo <= hi");
  check_range(task_input_bits_range, "task_input_bits_range", true);
  check_range(task_workload_cycles_range, "task_workload_cycles_range", true);

  require(price_model.future_mean > 0.0, "price_model.future_mean must be > 0");
  require(price_model.spot_mean > 0.0, "price_model.spot_mean must be > 0");
  require(price_model.future_spread >= 0.0 && price_model.spot_spread >= 0.0,
          "price spreads must be >= 0");
  require(price_model.spot_mean > price_model.future_mean,
          "spot price mean must exceed future price mean");
  if (price_model.kind == PriceDistribution::kUniform) {
    require(price_model.future_mean - price_model.future_spread > 0.0,
            "uniform future price support must stay positive");
    require(price_model.spot_mean - price_model.spot_spread > 0.0,
            "uniform spot price support must stay positive");
  }
  if (fault_injection.mode != FaultMode::kNone) {
    require(fault_injection.slot >= 0 && fault_injection.slot < total_slots(),
            "fault_injection.slot must lie inside the simulated horizon");
  }
}

std::string SimConfig::to_json() const {
  json j;
  j["frame_length"] = frame_length;
  j["frame_count"] = frame_count;
  j["budget_per_slot"] = budget_per_slot;
  j["lyapunov_v"] = lyapunov_v;
  j["location_count"] = location_count;
  j["cloud_accuracy_loss"] = cloud_accuracy_loss;
  j["edge_accuracy_loss_range"] = {edge_accuracy_loss_range[0], edge_accuracy_loss_range[1]};
  j["cloud_energy_per_bit_range"] = {cloud_energy_per_bit_range[0], cloud_energy_per_bit_range[1]};
  j["edge_energy_per_bit_range"] = {edge_energy_per_bit_range[0], edge_energy_per_bit_range[1]};
  j["edge_capacity_cycles_range"] = {edge_capacity_cycles_range[0], edge_capacity_cycles_range[1]};
  j["tasks_per_slot_range"] = {tasks_per_slot_range[0], tasks_per_slot_range[1]};
  j["task_input_bits_range"] = {task_input_bits_range[0], task_input_bits_range[1]};
  j["task_workload_cycles_range"] = {task_workload_cycles_range[0], task_workload_cycles_range[1]};
  j["price_model"] = {
      {"kind", price_model.kind == PriceDistribution::kUniform ? "uniform" : "gaussian"},
      {"future_mean", price_model.future_mean},
      {"future_spread", price_model.future_spread},
      {"spot_mean", price_model.spot_mean},
      {"spot_spread", price_model.spot_spread},
  };
  j["seed"] = seed;
  if (fault_injection.mode != FaultMode::kNone) {
    j["fault_injection"] = {
        {"mode", fault_injection.mode == FaultMode::kCorruptAssignment
                     ? "corrupt_assignment" : "skip_repair"},
        {"slot", fault_injection.slot},
    };
  }
  return j.dump(2);
}

SimConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kParse, "config root must be a JSON object");

  static const std::vector<std::string> known = {
      "frame_length", "frame_count", "budget_per_slot", "lyapunov_v",
      "location_count", "cloud_accuracy_loss", "edge_accuracy_loss_range",
      "cloud_energy_per_bit_range", "edge_energy_per_bit_range",
      "edge_capacity_cycles_range", "tasks_per_slot_range",
      "task_input_bits_range", "task_workload_cycles_range", "price_model",
      "seed", "fault_injection"};
  reject_unknown_keys(j, known, "");

  SimConfig cfg;
  try {
    if (j.contains("frame_length")) cfg.frame_length = j.at("frame_length").get<int>();
    if (j.contains("frame_count")) cfg.frame_count = j.at("frame_count").get<int>();
    if (j.contains("budget_per_slot")) cfg.budget_per_slot = j.at("budget_per_slot").get<double>();
    if (j.contains("lyapunov_v")) cfg.lyapunov_v = j.at("lyapunov_v").get<double>();
    if (j.contains("location_count")) cfg.location_count = j.at("location_count").get<int>();
    if (j.contains("cloud_accuracy_loss"))
      cfg.cloud_accuracy_loss = j.at("cloud_accuracy_loss").get<double>();
    if (j.contains("edge_accuracy_loss_range"))
      read_pair(j, "edge_accuracy_loss_range", cfg.edge_accuracy_loss_range);
    if (j.contains("cloud_energy_per_bit_range"))
      read_pair(j, "cloud_energy_per_bit_range", cfg.cloud_energy_per_bit_range);
    if (j.contains("edge_energy_per_bit_range"))
      read_pair(j, "edge_energy_per_bit_range", cfg.edge_energy_per_bit_range);
    if (j.contains("edge_capacity_cycles_range"))
      read_pair(j, "edge_capacity_cycles_range", cfg.edge_capacity_cycles_range);
    if (j.contains("tasks_per_slot_range")) {
      const auto& v = j.at("tasks_per_slot_range");
      if (!v.is_array() || v.size() != 2) {
        throw Error(ErrorCode::kValidation, "tasks_per_slot_range must be a [lo, hi] pair");
      }
      cfg.tasks_per_slot_range[0] = v[0].get<int>();
      cfg.tasks_per_slot_range[1] = v[1].get<int>();
    }
    if (j.contains("task_input_bits_range"))
      read_pair(j, "task_input_bits_range", cfg.task_input_bits_range);
    if (j.contains("task_workload_cycles_range"))
      read_pair(j, "task_workload_cycles_range", cfg.task_workload_cycles_range);
    if (j.contains("price_model")) {
      const auto& p = j.at("price_model");
      reject_unknown_keys(p, {"kind", "future_mean", "future_spread", "spot_mean",
                              "spot_spread"}, "price_model.");
      if (p.contains("kind")) cfg.price_model.kind = parse_distribution(p.at("kind").get<std::string>());
      if (p.contains("future_mean")) cfg.price_model.future_mean = p.at("future_mean").get<double>();
      if (p.contains("future_spread")) cfg.price_model.future_spread = p.at("future_spread").get<double>();
      if (p.contains("spot_mean")) cfg.price_model.spot_mean = p.at("spot_mean").get<double>();
      if (p.contains("spot_spread")) cfg.price_model.spot_spread = p.at("spot_spread").get<double>();
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();
    if (j.contains("fault_injection")) {
      const auto& f = j.at("fault_injection");
      reject_unknown_keys(f, {"mode", "slot"}, "fault_injection.");
      if (f.contains("mode")) cfg.fault_injection.mode = parse_fault_mode(f.at("mode").get<std::string>());
      if (f.contains("slot")) cfg.fault_injection.slot = f.at("slot").get<int64_t>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("config field has wrong type: ") + e.what());
  }

  cfg.validate();
  return cfg;
}

SimConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return config_from_json(buffer.str());
}

const std::vector<std::string>& sweepable_parameters() {
  static const std::vector<std::string> names = {
      "V", "T", "R_bug", "E_R_lt", "N_max", "M", "price_model"};
  return names;
}

void apply_override(SimConfig& cfg, const std::string& key, const std::string& value) {
  auto as_double = [&]() {
    try {
      size_t pos = 0;
      double v = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorCode::kValidation,
                  "value '" + value + "' for parameter '" + key + "' is not numeric");
    }
  };
  auto as_int = [&]() {
    double v = as_double();
    if (v != std::floor(v)) {
      throw Error(ErrorCode::kValidation, "parameter '" + key + "' needs an integer value");
    }
    return static_cast<int64_t>(v);
  };

  if (key == "V") {
    cfg.lyapunov_v = as_double();
  } else if (key == "T") {
    const int64_t total = static_cast<int64_t>(cfg.frame_length) * cfg.frame_count;
    const int64_t t = as_int();
    if (t < 1 || total % t != 0) {
      throw Error(ErrorCode::kValidation,
                  "T=" + value + " must divide the configured horizon of " +
                      std::to_string(total) + " slots");
    }
    cfg.frame_length = static_cast<int>(t);
    cfg.frame_count = static_cast<int>(total / t);
  } else if (key == "R_bug") {
    cfg.budget_per_slot = as_double();
  } else if (key == "E_R_lt") {
    // Rescales both market means together, preserving the spot/future ratio
    // and the relative spreads.
    const double target = as_double();
    if (target <= 0.0) {
      throw Error(ErrorCode::kValidation, "E_R_lt must be positive");
    }
    const double factor = target / cfg.price_model.future_mean;
    cfg.price_model.future_mean = target;
    cfg.price_model.future_spread *= factor;
    cfg.price_model.spot_mean *= factor;
    cfg.price_model.spot_spread *= factor;
  } else if (key == "N_max") {
    const int64_t n = as_int();
    if (n < 1) throw Error(ErrorCode::kValidation, "N_max must be >= 1");
    cfg.tasks_per_slot_range[1] = static_cast<int>(n);
    if (cfg.tasks_per_slot_range[0] > cfg.tasks_per_slot_range[1]) {
      cfg.tasks_per_slot_range[0] = 1;
    }
  } else if (key == "M") {
    cfg.location_count = static_cast<int>(as_int());
  } else if (key == "price_model") {
    cfg.price_model.kind = parse_distribution(value);
  } else if (key == "seed") {
    cfg.seed = static_cast<uint64_t>(as_int());
  } else {
    throw Error(ErrorCode::kValidation, "unknown parameter '" + key + "'");
  }
  cfg.validate();
}

}  // namespace carbon_sched
