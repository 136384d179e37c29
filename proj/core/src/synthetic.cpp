#include "ecofollow/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "ecofollow/error.hpp"
#include "ecofollow/rng.hpp"

namespace ecofollow {

CarFollowingEvent make_event(const std::string& id, std::span<const double> lead_speeds,
                             double dt, double initial_gap, double initial_follow_speed,
                             const Controller& follower, const EnvConfig& env) {
  if (lead_speeds.size() < 2) throw ArgumentError("need at least two leader samples");
  CarFollowingEvent event;
  event.event_id = id;
  event.dt = dt;
  event.samples.resize(lead_speeds.size());
  double x_lead = initial_gap;
  for (std::size_t k = 0; k < lead_speeds.size(); ++k) {
    if (k > 0) x_lead += 0.5 * (lead_speeds[k - 1] + lead_speeds[k]) * dt;
    auto& s = event.samples[k];
    s.time = static_cast<double>(k) * dt;
    s.lead_position = x_lead;
    s.lead_speed = lead_speeds[k];
  }
  event.samples[0].follow_position = 0.0;
  event.samples[0].follow_speed = initial_follow_speed;

  const SimulatedTrace trace = rollout(event, follower, env);
  if (trace.collided) {
    throw DataError("synthetic follower collided in event '" + id + "'");
  }
  for (std::size_t k = 1; k < trace.size(); ++k) {
    event.samples[k].follow_speed = trace.follow_speed[k];
    event.samples[k].follow_position = trace.follow_position[k];
  }
  event.samples.back().follow_speed = trace.final_state.follow_speed;
  event.samples.back().follow_position = trace.final_position;
  return event;
}

std::vector<CarFollowingEvent> synthetic_events(const SyntheticOptions& options) {
  if (!(options.dt > 0.0) || !(options.duration >= options.dt)) {
    throw ArgumentError("synthetic events need dt > 0 and duration >= dt");
  }
  SplitMix64 rng(derive_seed(options.seed, "synthetic-events"));
  const auto n = static_cast<std::size_t>(std::llround(options.duration / options.dt)) + 1;
  const IdmController follower(options.follower);

  std::vector<CarFollowingEvent> events;
  events.reserve(options.events);
  for (std::size_t e = 0; e < options.events; ++e) {
    std::vector<double> lead(n);
    const double v0 = rng.uniform(6.0, 12.0);
    if (e % 2 == 0) {
      const double amplitude = rng.uniform(0.5, 2.5);
      const double period = rng.uniform(8.0, 20.0);
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * options.dt;
        lead[k] = std::max(
            0.0, v0 + amplitude * (std::sin(2.0 * std::numbers::pi * t / period + phase) -
                                   std::sin(phase)));
      }
    } else {
      const double t_step = rng.uniform(3.0, 0.5 * options.duration);
      const double v1 = std::max(1.0, v0 + rng.uniform(-4.0, 3.0));
      const double ramp = rng.uniform(0.5, 1.5);  // m/s^2
      double v = v0;
      for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * options.dt;
        if (k > 0 && t > t_step) {
          const double dv = std::clamp(v1 - v, -ramp * options.dt, ramp * options.dt);
          v += dv;
        }
        lead[k] = v;
      }
    }
    const double headway = rng.uniform(1.0, 2.0);
    const double gap = options.follower.s_jam + headway * lead[0];
    char id[64];
    std::snprintf(id, sizeof(id), "%s%04zu", options.id_prefix.c_str(), e);
    events.push_back(make_event(id, lead, options.dt, gap, lead[0], follower));
  }
  return events;
}

}  // namespace ecofollow
