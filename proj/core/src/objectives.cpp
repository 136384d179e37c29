#include "ecofollow/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ecofollow/error.hpp"

namespace ecofollow {

std::optional<double> ttc(double spacing, double rel_speed) {
  if (!(rel_speed < 0.0)) return std::nullopt;
  return std::max(spacing, 0.0) / -rel_speed;
}

std::optional<double> signed_ttc(double spacing, double rel_speed) {
  if (rel_speed == 0.0) return std::nullopt;
  return -spacing / rel_speed;
}

double f_ttc(std::optional<double> ttc_value, double ttc_floor) {
  if (!ttc_value || *ttc_value < 0.0 || *ttc_value > 4.0) return 0.0;
  return std::log(std::max(*ttc_value, ttc_floor) / 4.0);
}

std::optional<double> time_headway(double gap, double follow_speed, double speed_floor) {
  if (follow_speed < speed_floor) return std::nullopt;
  return gap / follow_speed;
}

double lognormal_pdf(double x, double mu, double sigma) {
  if (!(x > 0.0)) return 0.0;
  const double z = (std::log(x) - mu) / sigma;
  return std::exp(-0.5 * z * z) / (x * sigma * std::sqrt(2.0 * std::numbers::pi));
}

double f_headway(std::optional<double> h, const HeadwayModel& model) {
  if (!h) return 0.0;
  return lognormal_pdf(*h, model.mu, model.sigma);
}

double jerk(double accel_now, double accel_prev, double dt) {
  if (!(dt > 0.0)) throw ArgumentError("jerk needs dt > 0");
  return (accel_now - accel_prev) / dt;
}

double f_jerk(double j, double j_scale) {
  if (!(j_scale > 0.0)) throw ArgumentError("jerk scale must be positive");
  const double r = j / j_scale;
  return -(r * r);
}

double f_fuel(double rate, double rate_scale) {
  if (!(rate_scale > 0.0)) throw ArgumentError("fuel scale must be positive");
  return std::clamp(-rate / rate_scale, -5.0, 0.0);
}

RewardBreakdown combine_reward(double f_ttc_value, double f_headway_value,
                               double f_fuel_value, double f_jerk_value,
                               const RewardWeights& w, bool collided,
                               double collision_penalty) {
  RewardBreakdown r;
  r.f_ttc = f_ttc_value;
  r.f_headway = f_headway_value;
  r.f_fuel = f_fuel_value;
  r.f_jerk = f_jerk_value;
  r.total = w.ttc * f_ttc_value + w.headway * f_headway_value + w.fuel * f_fuel_value +
            w.jerk * f_jerk_value;
  if (collided) {
    r.total += collision_penalty;
    r.collision_penalty_applied = true;
  }
  return r;
}

RewardBreakdown reward(const StepRewardInputs& in, const RewardConfig& config,
                       const VtMicroModel& fuel_model) {
  const EnvState& s = in.next_state;
  const double gap = std::max(s.spacing, 0.0);
  const double c_ttc = f_ttc(ttc(s.spacing, s.rel_speed), config.ttc_floor);
  const double c_headway =
      f_headway(time_headway(gap, s.follow_speed, config.speed_floor), config.headway);
  const double c_fuel = f_fuel(fuel_model.rate(in.speed, in.accel), config.fuel_scale);
  const double c_jerk = f_jerk(jerk(in.accel, in.accel_prev, in.dt), config.jerk_scale);
  return combine_reward(c_ttc, c_headway, c_fuel, c_jerk, config.weights, in.collided,
                        config.collision_penalty);
}

}  // namespace ecofollow
