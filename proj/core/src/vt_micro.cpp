#include "ecofollow/vt_micro.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ecofollow/error.hpp"

namespace ecofollow {

double moe_exponent(const VtMicroCoefficients& coeffs, double v, double a) {
  double outer = 0.0;
  for (int i = 3; i >= 0; --i) {
    const auto& row = coeffs.k[static_cast<std::size_t>(i)];
    const double inner = ((row[3] * a + row[2]) * a + row[1]) * a + row[0];
    outer = outer * v + inner;
  }
  return outer;
}

FuelRate fuel_rate(const VtMicroCoefficients& accel_table,
                   const VtMicroCoefficients& decel_table, double v, double a) {
  const auto& table = a >= 0.0 ? accel_table : decel_table;
  return {std::exp(moe_exponent(table, v, a))};
}

const VtMicroCoefficients& VtMicroModel::table_for(double a) const {
  return (single_table || a >= 0.0) ? accel_table : decel_table;
}

double VtMicroModel::exponent(double v, double a) const {
  return moe_exponent(table_for(a), v * units.speed_scale, a * units.accel_scale);
}

double VtMicroModel::rate(double v, double a) const {
  return units.rate_scale * std::exp(exponent(v, a));
}

namespace {

VtMicroCoefficients parse_table(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("regime") || !j.contains("k")) {
    throw LoadError("VT-Micro table needs 'regime' and 'k'");
  }
  VtMicroCoefficients c;
  const auto regime = j.at("regime").get<std::string>();
  if (regime == "acceleration") {
    c.regime = Regime::kAcceleration;
  } else if (regime == "deceleration") {
    c.regime = Regime::kDeceleration;
  } else {
    throw LoadError("unknown VT-Micro regime '" + regime + "'");
  }
  const auto& k = j.at("k");
  if (!k.is_array() || k.size() != 4) throw LoadError("VT-Micro 'k' must be 4x4");
  for (std::size_t i = 0; i < 4; ++i) {
    if (!k[i].is_array() || k[i].size() != 4) {
      throw LoadError("VT-Micro 'k' must be 4x4");
    }
    for (std::size_t jj = 0; jj < 4; ++jj) {
      const double value = k[i][jj].get<double>();
      if (!std::isfinite(value)) throw LoadError("VT-Micro coefficient is not finite");
      c.k[i][jj] = value;
    }
  }
  return c;
}

}  // namespace

VtMicroModel parse_vt_micro(const std::string& json_text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("VT-Micro file is not valid JSON: ") + e.what());
  }

  VtMicroModel model;
  const nlohmann::json* tables = &root;
  try {
    if (root.is_object()) {
      if (!root.contains("tables")) throw LoadError("VT-Micro file needs 'tables'");
      tables = &root.at("tables");
      if (root.contains("units")) {
        const auto& u = root.at("units");
        model.units.speed_scale = u.value("speed_scale", 1.0);
        model.units.accel_scale = u.value("accel_scale", 1.0);
        model.units.rate_scale = u.value("rate_scale", 1.0);
      }
      model.single_table = root.value("single_table", false);
      model.source = root.value("source", std::string{});
    }
    if (!tables->is_array() || tables->empty()) {
      throw LoadError("VT-Micro 'tables' must be a non-empty array");
    }
    bool have_accel = false;
    bool have_decel = false;
    for (const auto& t : *tables) {
      const auto c = parse_table(t);
      if (c.regime == Regime::kAcceleration) {
        model.accel_table = c;
        have_accel = true;
      } else {
        model.decel_table = c;
        have_decel = true;
      }
    }
    if (!have_accel) throw LoadError("VT-Micro file has no acceleration table");
    if (!have_decel && !model.single_table) {
      throw LoadError("VT-Micro file has no deceleration table (set single_table)");
    }
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("malformed VT-Micro file: ") + e.what());
  }
  return model;
}

VtMicroModel load_vt_micro(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open VT-Micro file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_vt_micro(buffer.str());
}

FuelTotals event_fuel(const SimulatedTrace& trace, const VtMicroModel& model) {
  if (trace.size() == 0) {
    throw ArgumentError("event_fuel needs a trace with at least one step");
  }
  FuelTotals totals;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    totals.total_ml += model.rate(trace.follow_speed[k], trace.accel[k]) * trace.dt;
  }
  totals.mean_rate = totals.total_ml / trace.duration();
  return totals;
}

FuelTotals event_fuel(const CarFollowingEvent& event, const VtMicroModel& model) {
  return event_fuel(recorded_trace(event), model);
}

}  // namespace ecofollow
