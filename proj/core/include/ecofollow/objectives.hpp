#pragma once

#include <optional>

#include "ecofollow/vt_micro.hpp"

namespace ecofollow {

// Time-to-collision S / (-dv) for a closing gap (rel_speed < 0). Absent when
// the gap is opening or constant. A non-positive spacing with a closing gap
// yields 0.
std::optional<double> ttc(double spacing, double rel_speed);

// -S / dv for any dv != 0; negative for opening gaps. Used for distributions.
std::optional<double> signed_ttc(double spacing, double rel_speed);

// ln(max(TTC, floor) / 4) for 0 <= TTC <= 4, else 0 (including absent).
double f_ttc(std::optional<double> ttc_value, double ttc_floor = 0.1);

// gap / v for v >= speed_floor; absent below it.
std::optional<double> time_headway(double gap, double follow_speed,
                                   double speed_floor = 0.1);

// Lognormal headway model. Defaults are the fit reported for NGSIM I-80.
struct HeadwayModel {
  double mu = 0.4226;
  double sigma = 0.5436;
};

double lognormal_pdf(double x, double mu, double sigma);

// Lognormal density at h; 0 for an absent or non-positive headway.
double f_headway(std::optional<double> h, const HeadwayModel& model);

double jerk(double accel_now, double accel_prev, double dt);

// -(j / j_scale)^2.
double f_jerk(double j, double j_scale = 60.0);

// -rate / rate_scale, clipped to [-5, 0].
double f_fuel(double rate, double rate_scale = 1.0);

struct RewardWeights {
  double ttc = 1.0;
  double headway = 1.0;
  double fuel = 1.0;
  double jerk = 1.0;
};

struct RewardConfig {
  RewardWeights weights;
  HeadwayModel headway;
  double jerk_scale = 60.0;  // m/s^3
  double fuel_scale = 1.0;  // mL/s
  double collision_penalty = -10.0;
  double ttc_floor = 0.1;  // s
  double speed_floor = 0.1;  // m/s
};

struct RewardBreakdown {
  double f_ttc = 0.0;
  double f_headway = 0.0;
  double f_fuel = 0.0;
  double f_jerk = 0.0;
  double total = 0.0;
  bool collision_penalty_applied = false;
};

// Weighted sum of the four components plus the penalty when `collided`.
RewardBreakdown combine_reward(double f_ttc_value, double f_headway_value,
                               double f_fuel_value, double f_jerk_value,
                               const RewardWeights& weights, bool collided = false,
                               double collision_penalty = -10.0);

// Everything the reward needs about one environment transition.
struct StepRewardInputs {
  double speed = 0.0;  // follower speed at the start of the step
  double accel = 0.0;  // applied acceleration
  double accel_prev = 0.0;  // 0 on the first step of an episode
  double dt = 0.1;
  EnvState next_state;  // state after the step
  bool collided = false;
};

// Safety and efficiency are scored on the post-step state, fuel on the
// (speed, accel) pair that produced it.
RewardBreakdown reward(const StepRewardInputs& in, const RewardConfig& config,
                       const VtMicroModel& fuel_model);

}  // namespace ecofollow
