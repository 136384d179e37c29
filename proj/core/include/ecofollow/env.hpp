#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "ecofollow/traj_data.hpp"

namespace ecofollow {

// Observation seen by a follower controller.
struct EnvState {
  double follow_speed = 0.0;  // m/s
  double spacing = 0.0;  // m, bumper-to-bumper
  double rel_speed = 0.0;  // m/s, leader minus follower (> 0: gap opening)
};

struct EnvConfig {
  double a_min = -3.0;  // m/s^2
  double a_max = 3.0;  // m/s^2
  // Net gap at or below which the follower has collided.
  double collision_gap = 0.0;  // m

  double clamp(double accel) const;
};

struct StepOutcome {
  EnvState next_state;
  bool collided = false;
  bool done = false;
  double follow_position = 0.0;  // m
};

EnvState initial_state(const CarFollowingEvent& event);

// Advances the follower by one interval. Speed uses explicit Euler (clamped
// at zero); position and spacing use the trapezoidal rule on the speeds at
// both ends of the interval. `done` is set on collision only; the caller
// decides when the leader trajectory is exhausted.
StepOutcome advance(const EnvState& state, double accel, double lead_speed_next,
                    double dt, const EnvConfig& config = {},
                    double follow_position = 0.0);

// Stateful wrapper that replays the leader of one event.
// The event must outlive the Env.
class Env {
 public:
  explicit Env(EnvConfig config = {}) : config_(config) {}

  EnvState reset(const CarFollowingEvent& event);
  StepOutcome step(double accel);

  const EnvConfig& config() const { return config_; }
  const EnvState& state() const { return state_; }
  double follow_position() const { return follow_position_; }
  std::size_t step_index() const { return index_; }
  double time() const;
  bool done() const { return done_; }

 private:
  EnvConfig config_;
  const CarFollowingEvent* event_ = nullptr;
  EnvState state_;
  double follow_position_ = 0.0;
  std::size_t index_ = 0;
  bool done_ = true;
};

struct ControlContext {
  const CarFollowingEvent& event;
  std::size_t step;  // index of the sample the action starts from
  EnvState state;
  double prev_accel;  // 0 on the first step
};

// Longitudinal follower policy. Implementations are const and hold no
// per-rollout state, so one instance may drive rollouts on several threads.
class Controller {
 public:
  virtual ~Controller() = default;
  virtual std::string name() const = 0;
  virtual double accel(const ControlContext& context) const = 0;
};

// Replays the recorded follower accelerations (v[k+1]-v[k])/dt.
class RecordedReplayController final : public Controller {
 public:
  std::string name() const override { return "replay"; }
  double accel(const ControlContext& context) const override;
};

class ConstantAccelController final : public Controller {
 public:
  explicit ConstantAccelController(double accel) : accel_(accel) {}
  std::string name() const override { return "constant"; }
  double accel(const ControlContext&) const override { return accel_; }

 private:
  double accel_;
};

// Per-step arrays of a follower trajectory. Row k holds the state at the
// start of step k and the acceleration applied over [t_k, t_k + dt].
struct SimulatedTrace {
  std::string event_id;
  std::string controller;
  double dt = 0.1;
  std::vector<double> time;
  std::vector<double> accel;
  std::vector<double> follow_speed;
  std::vector<double> spacing;
  std::vector<double> rel_speed;
  std::vector<double> follow_position;
  bool collided = false;
  EnvState final_state;
  double final_position = 0.0;

  std::size_t size() const { return time.size(); }
  double duration() const { return static_cast<double>(size()) * dt; }
};

// Controller outputs are clamped to the config's action bounds. Stops early
// on collision (the colliding step is the last row).
SimulatedTrace rollout(const CarFollowingEvent& event, const Controller& controller,
                       const EnvConfig& config = {});

// The recorded follower in trace form, with forward-difference accelerations.
SimulatedTrace recorded_trace(const CarFollowingEvent& event);

// CSV with header `t,accel,v_follow,spacing,rel_speed,x_follow`.
void write_trace_csv(std::ostream& out, const SimulatedTrace& trace);

}  // namespace ecofollow
