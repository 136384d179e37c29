#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ecofollow/env.hpp"

namespace ecofollow {

// Intelligent Driver Model parameters. The defaults are conventional IDM
// magnitudes, not values fitted to any dataset; use calibrate_idm() for that.
struct IdmParams {
  double a_max = 1.0;  // m/s^2, maximum acceleration
  double v_desired = 15.0;  // m/s
  double beta = 4.0;  // free-road exponent
  double s_jam = 2.0;  // m, minimum standstill spacing
  double T_headway = 1.2;  // s, desired time headway
  double a_comf = 2.0;  // m/s^2, comfortable deceleration

  // Throws ArgumentError if any invariant is violated.
  void validate() const;
  bool operator==(const IdmParams&) const = default;
};

// `dv_closing` is follower minus leader speed (positive when the gap closes),
// i.e. the negation of EnvState::rel_speed.
double desired_spacing(const IdmParams& params, double v, double dv_closing);

// Unclamped IDM acceleration. Throws ArgumentError for spacing <= 0.
double idm_accel_raw(const IdmParams& params, double v, double spacing,
                     double dv_closing);

// IDM acceleration clamped to the environment's action bounds.
double idm_accel(const IdmParams& params, double v, double spacing, double dv_closing,
                 const EnvConfig& bounds = {});

class IdmController final : public Controller {
 public:
  explicit IdmController(IdmParams params, EnvConfig bounds = {});

  std::string name() const override { return "idm"; }
  double accel(const ControlContext& context) const override;
  const IdmParams& params() const { return params_; }

 private:
  IdmParams params_;
  EnvConfig bounds_;
};

// Candidate values per parameter. With random_samples == 0 the full
// Cartesian grid is searched; otherwise that many candidates are drawn
// uniformly from [min, max] of each list using `seed`.
struct IdmSearchSpace {
  std::vector<double> a_max{1.0};
  std::vector<double> v_desired{15.0};
  std::vector<double> beta{4.0};
  std::vector<double> s_jam{2.0};
  std::vector<double> T_headway{1.2};
  std::vector<double> a_comf{2.0};
  std::size_t random_samples = 0;
  std::uint64_t seed = 0;
};

struct IdmCalibration {
  IdmParams params;
  double spacing_mse = 0.0;  // m^2, over steps of non-colliding events
  std::size_t collisions = 0;  // events on which the best candidate collided
  std::size_t candidates = 0;
};

// Picks the candidate with the fewest colliding events, then the lowest mean
// squared spacing error between its rollouts and the recorded follower.
IdmCalibration calibrate_idm(std::span<const CarFollowingEvent> events,
                             const IdmSearchSpace& space, const EnvConfig& env = {});

}  // namespace ecofollow
