#include "ecofollow/idm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ecofollow/error.hpp"
#include "ecofollow/rng.hpp"

namespace ecofollow {

void IdmParams::validate() const {
  if (!(a_max > 0.0)) throw ArgumentError("IDM a_max must be > 0");
  if (!(v_desired > 0.0)) throw ArgumentError("IDM v_desired must be > 0");
  if (!(beta > 0.0)) throw ArgumentError("IDM beta must be > 0");
  if (!(s_jam >= 0.0)) throw ArgumentError("IDM s_jam must be >= 0");
  if (!(T_headway >= 0.0)) throw ArgumentError("IDM T_headway must be >= 0");
  if (!(a_comf > 0.0)) throw ArgumentError("IDM a_comf must be > 0");
}

double desired_spacing(const IdmParams& p, double v, double dv_closing) {
  const double dynamic =
      v * p.T_headway + v * dv_closing / (2.0 * std::sqrt(p.a_max * p.a_comf));
  return p.s_jam + std::max(0.0, dynamic);
}

double idm_accel_raw(const IdmParams& p, double v, double spacing, double dv_closing) {
  if (!(spacing > 0.0)) {
    throw ArgumentError("IDM spacing must be positive (collision not terminated?)");
  }
  const double free_road = std::pow(std::max(0.0, v) / p.v_desired, p.beta);
  const double ratio = desired_spacing(p, v, dv_closing) / spacing;
  return p.a_max * (1.0 - free_road - ratio * ratio);
}

double idm_accel(const IdmParams& p, double v, double spacing, double dv_closing,
                 const EnvConfig& bounds) {
  return bounds.clamp(idm_accel_raw(p, v, spacing, dv_closing));
}

IdmController::IdmController(IdmParams params, EnvConfig bounds)
    : params_(params), bounds_(bounds) {
  params_.validate();
}

double IdmController::accel(const ControlContext& context) const {
  const EnvState& s = context.state;
  return idm_accel(params_, s.follow_speed, s.spacing, -s.rel_speed, bounds_);
}

namespace {

std::vector<IdmParams> enumerate_candidates(const IdmSearchSpace& space) {
  const std::vector<const std::vector<double>*> axes = {
      &space.a_max, &space.v_desired, &space.beta,
      &space.s_jam, &space.T_headway, &space.a_comf};
  for (const auto* axis : axes) {
    if (axis->empty()) throw ArgumentError("IDM search space has an empty axis");
  }
  auto assign = [](IdmParams& p, std::size_t axis, double value) {
    switch (axis) {
      case 0: p.a_max = value; break;
      case 1: p.v_desired = value; break;
      case 2: p.beta = value; break;
      case 3: p.s_jam = value; break;
      case 4: p.T_headway = value; break;
      default: p.a_comf = value; break;
    }
  };

  std::vector<IdmParams> out;
  if (space.random_samples > 0) {
    SplitMix64 rng(space.seed);
    for (std::size_t n = 0; n < space.random_samples; ++n) {
      IdmParams p;
      for (std::size_t a = 0; a < axes.size(); ++a) {
        const auto [lo, hi] = std::minmax_element(axes[a]->begin(), axes[a]->end());
        assign(p, a, rng.uniform(*lo, *hi));
      }
      out.push_back(p);
    }
    return out;
  }

  std::vector<std::size_t> cursor(axes.size(), 0);
  while (true) {
    IdmParams p;
    for (std::size_t a = 0; a < axes.size(); ++a) assign(p, a, (*axes[a])[cursor[a]]);
    out.push_back(p);
    std::size_t a = 0;
    for (; a < axes.size(); ++a) {
      if (++cursor[a] < axes[a]->size()) break;
      cursor[a] = 0;
    }
    if (a == axes.size()) break;
  }
  return out;
}

}  // namespace

IdmCalibration calibrate_idm(std::span<const CarFollowingEvent> events,
                             const IdmSearchSpace& space, const EnvConfig& env) {
  if (events.empty()) throw ArgumentError("calibrate_idm needs at least one event");
  const auto candidates = enumerate_candidates(space);

  IdmCalibration best;
  best.collisions = std::numeric_limits<std::size_t>::max();
  best.spacing_mse = std::numeric_limits<double>::infinity();
  bool found = false;
  for (const auto& params : candidates) {
    try {
      params.validate();
    } catch (const ArgumentError&) {
      continue;
    }
    const IdmController controller(params, env);
    std::size_t collisions = 0;
    double sq_error = 0.0;
    std::size_t n = 0;
    for (const auto& event : events) {
      const SimulatedTrace trace = rollout(event, controller, env);
      if (trace.collided) {
        ++collisions;
        continue;
      }
      for (std::size_t k = 1; k < trace.size(); ++k) {
        const double err = trace.spacing[k] - event.samples[k].gap();
        sq_error += err * err;
      }
      const double err = trace.final_state.spacing - event.samples.back().gap();
      sq_error += err * err;
      n += trace.size();
    }
    if (collisions == events.size()) continue;
    const double mse = n > 0 ? sq_error / static_cast<double>(n) : 0.0;
    if (!found || collisions < best.collisions ||
        (collisions == best.collisions && mse < best.spacing_mse)) {
      best.params = params;
      best.collisions = collisions;
      best.spacing_mse = mse;
      found = true;
    }
  }
  if (!found) {
    throw CalibrationError("every IDM candidate collided on every event");
  }
  best.candidates = candidates.size();
  return best;
}

}  // namespace ecofollow
