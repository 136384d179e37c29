#pragma once

#include <array>
#include <filesystem>
#include <string>

#include "ecofollow/env.hpp"

namespace ecofollow {

enum class Regime { kAcceleration, kDeceleration };

// 4x4 regression table: k[i][j] multiplies v^i * a^j.
struct VtMicroCoefficients {
  std::array<std::array<double, 4>, 4> k{};
  Regime regime = Regime::kAcceleration;
};

// Scale factors applied to (v, a) before evaluating the polynomial and to the
// exponential afterwards. Published tables use km/h, km/h/s and L/s; the
// corresponding factors are 3.6, 3.6 and 1000 to work in m/s, m/s^2, mL/s.
struct VtMicroUnits {
  double speed_scale = 1.0;
  double accel_scale = 1.0;
  double rate_scale = 1.0;
};

// P(v, a) = sum_ij k[i][j] v^i a^j, nested Horner in both variables.
double moe_exponent(const VtMicroCoefficients& coeffs, double v, double a);

struct FuelRate {
  double rate = 0.0;  // mL/s
};

// exp(P) using the acceleration table for a >= 0, the deceleration table otherwise.
FuelRate fuel_rate(const VtMicroCoefficients& accel_table,
                   const VtMicroCoefficients& decel_table, double v, double a);

// A loaded pair of tables with their unit conventions.
struct VtMicroModel {
  VtMicroCoefficients accel_table{{}, Regime::kAcceleration};
  VtMicroCoefficients decel_table{{}, Regime::kDeceleration};
  VtMicroUnits units;
  // Score every step with the acceleration table.
  bool single_table = false;
  std::string source;

  const VtMicroCoefficients& table_for(double a) const;
  // Exponent in the table's native units, i.e. log(rate / rate_scale).
  double exponent(double v, double a) const;
  // mL/s with v in m/s and a in m/s^2 (given consistent units).
  double rate(double v, double a) const;
};

// Reads `{"units":{...}, "tables":[{"regime":"acceleration","k":[[4]x4]}, ...]}`
// or a bare two-element array of table objects.
VtMicroModel load_vt_micro(const std::filesystem::path& path);
VtMicroModel parse_vt_micro(const std::string& json_text);

struct FuelTotals {
  double total_ml = 0.0;
  double mean_rate = 0.0;  // mL/s
};

// Left-rectangle integration of the per-row fuel rate. Throws ArgumentError
// on an empty trace.
FuelTotals event_fuel(const SimulatedTrace& trace, const VtMicroModel& model);
FuelTotals event_fuel(const CarFollowingEvent& event, const VtMicroModel& model);

}  // namespace ecofollow
