#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ecofollow/idm.hpp"
#include "ecofollow/traj_data.hpp"

namespace ecofollow {

// Generator for kinematically consistent car-following events: a scripted
// leader (sinusoidal or step-speed) and an IDM-driven follower simulated with
// the environment's own update rule.
struct SyntheticOptions {
  std::size_t events = 50;
  double duration = 20.0;  // s
  double dt = 0.1;  // s
  std::uint64_t seed = 0;
  IdmParams follower;
  std::string id_prefix = "syn";
};

// Builds an event from leader speeds by integrating leader position with the
// trapezoidal rule and driving the follower with `follower`.
CarFollowingEvent make_event(const std::string& id, std::span<const double> lead_speeds,
                             double dt, double initial_gap, double initial_follow_speed,
                             const Controller& follower, const EnvConfig& env = {});

// Alternates sinusoidal and step-speed leader profiles.
std::vector<CarFollowingEvent> synthetic_events(const SyntheticOptions& options);

}  // namespace ecofollow
