#include "ecofollow/env.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ecofollow/csv.hpp"
#include "ecofollow/error.hpp"

namespace ecofollow {

double EnvConfig::clamp(double accel) const { return std::clamp(accel, a_min, a_max); }

EnvState initial_state(const CarFollowingEvent& event) {
  if (event.samples.empty()) {
    throw ArgumentError("event '" + event.event_id + "' has no samples");
  }
  const auto& s = event.samples.front();
  return {s.follow_speed, s.gap(), s.rel_speed()};
}

StepOutcome advance(const EnvState& state, double accel, double lead_speed_next,
                    double dt, const EnvConfig& config, double follow_position) {
  if (!std::isfinite(state.follow_speed) || !std::isfinite(state.spacing) ||
      !std::isfinite(state.rel_speed) || !std::isfinite(accel) ||
      !std::isfinite(lead_speed_next) || !std::isfinite(dt)) {
    throw NumericError("non-finite input to environment step");
  }
  if (!(dt > 0.0)) throw ArgumentError("dt must be positive");
  if (accel < config.a_min || accel > config.a_max) {
    throw ArgumentError("acceleration " + csv::format_double(accel) +
                        " outside action bounds");
  }

  StepOutcome out;
  const double v_next = std::max(0.0, state.follow_speed + accel * dt);
  const double dv_next = lead_speed_next - v_next;
  out.next_state.follow_speed = v_next;
  out.next_state.rel_speed = dv_next;
  out.next_state.spacing = state.spacing + 0.5 * (state.rel_speed + dv_next) * dt;
  out.follow_position = follow_position + 0.5 * (state.follow_speed + v_next) * dt;
  out.collided = out.next_state.spacing <= config.collision_gap;
  out.done = out.collided;
  return out;
}

EnvState Env::reset(const CarFollowingEvent& event) {
  event_ = &event;
  state_ = initial_state(event);
  follow_position_ = event.samples.front().follow_position;
  index_ = 0;
  done_ = event.samples.size() < 2;
  return state_;
}

StepOutcome Env::step(double accel) {
  if (event_ == nullptr || done_) {
    throw ArgumentError("step called on a finished or unset environment");
  }
  const double lead_next = event_->samples[index_ + 1].lead_speed;
  StepOutcome out = advance(state_, accel, lead_next, event_->dt, config_, follow_position_);
  ++index_;
  state_ = out.next_state;
  follow_position_ = out.follow_position;
  out.done = out.collided || index_ + 1 >= event_->samples.size();
  done_ = out.done;
  return out;
}

double Env::time() const {
  return event_ == nullptr ? 0.0 : event_->samples[index_].time;
}

double RecordedReplayController::accel(const ControlContext& context) const {
  const auto& samples = context.event.samples;
  if (context.step + 1 >= samples.size()) {
    throw ArgumentError("replay controller ran past the recorded trajectory");
  }
  return (samples[context.step + 1].follow_speed - samples[context.step].follow_speed) /
         context.event.dt;
}

namespace {

void push_row(SimulatedTrace& trace, double t, double accel, const EnvState& s,
              double x_follow) {
  trace.time.push_back(t);
  trace.accel.push_back(accel);
  trace.follow_speed.push_back(s.follow_speed);
  trace.spacing.push_back(s.spacing);
  trace.rel_speed.push_back(s.rel_speed);
  trace.follow_position.push_back(x_follow);
}

// Keeps the original exception type so callers can still tell numeric from
// configuration failures.
std::string controller_failure(const Controller& controller, std::size_t k, const Error& e) {
  return "controller '" + controller.name() + "' failed at step " + std::to_string(k) + ": " +
         e.what();
}

}  // namespace

SimulatedTrace rollout(const CarFollowingEvent& event, const Controller& controller,
                       const EnvConfig& config) {
  SimulatedTrace trace;
  trace.event_id = event.event_id;
  trace.controller = controller.name();
  trace.dt = event.dt;

  Env env(config);
  env.reset(event);
  const std::size_t steps = event.steps();
  trace.time.reserve(steps);
  double prev_accel = 0.0;
  while (!env.done()) {
    const std::size_t k = env.step_index();
    const EnvState state = env.state();
    double accel = 0.0;
    try {
      accel = controller.accel(ControlContext{event, k, state, prev_accel});
    } catch (const NumericError& e) {
      throw NumericError(controller_failure(controller, k, e));
    } catch (const ArgumentError& e) {
      throw ArgumentError(controller_failure(controller, k, e));
    } catch (const ConfigError& e) {
      throw ConfigError(controller_failure(controller, k, e));
    } catch (const Error& e) {
      throw Error(controller_failure(controller, k, e));
    }
    if (!std::isfinite(accel)) {
      throw NumericError("controller '" + controller.name() +
                         "' returned a non-finite acceleration at step " +
                         std::to_string(k));
    }
    accel = config.clamp(accel);
    push_row(trace, env.time(), accel, state, env.follow_position());
    const StepOutcome out = env.step(accel);
    prev_accel = accel;
    if (out.collided) trace.collided = true;
  }
  trace.final_state = env.state();
  trace.final_position = env.follow_position();
  return trace;
}

SimulatedTrace recorded_trace(const CarFollowingEvent& event) {
  SimulatedTrace trace;
  trace.event_id = event.event_id;
  trace.controller = "ground_truth";
  trace.dt = event.dt;
  const auto accel = recorded_accelerations(event);
  for (std::size_t k = 0; k < accel.size(); ++k) {
    const auto& s = event.samples[k];
    push_row(trace, s.time, accel[k], {s.follow_speed, s.gap(), s.rel_speed()},
             s.follow_position);
  }
  if (!event.samples.empty()) {
    const auto& last = event.samples.back();
    trace.final_state = {last.follow_speed, last.gap(), last.rel_speed()};
    trace.final_position = last.follow_position;
  }
  return trace;
}

void write_trace_csv(std::ostream& out, const SimulatedTrace& trace) {
  using csv::format_double;
  out << "t,accel,v_follow,spacing,rel_speed,x_follow\n";
  for (std::size_t k = 0; k < trace.size(); ++k) {
    out << format_double(trace.time[k]) << ',' << format_double(trace.accel[k]) << ','
        << format_double(trace.follow_speed[k]) << ',' << format_double(trace.spacing[k])
        << ',' << format_double(trace.rel_speed[k]) << ','
        << format_double(trace.follow_position[k]) << '\n';
  }
}

}  // namespace ecofollow
