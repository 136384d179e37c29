#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ecofollow/env.hpp"
#include "ecofollow/mlp.hpp"
#include "ecofollow/rng.hpp"

namespace ecofollow {

using NormState = std::array<double, 3>;

// Divides (speed, spacing, rel_speed) by fixed NGSIM-scale magnitudes.
struct StateNormalizer {
  double speed = 30.0;  // m/s
  double spacing = 100.0;  // m
  double rel_speed = 10.0;  // m/s

  NormState normalize(const EnvState& s) const {
    return {s.follow_speed / speed, s.spacing / spacing, s.rel_speed / rel_speed};
  }
  EnvState denormalize(const NormState& n) const {
    return {n[0] * speed, n[1] * spacing, n[2] * rel_speed};
  }
};

struct Transition {
  NormState state{};
  double action = 0.0;  // normalized, [-1, 1]
  double reward = 0.0;
  NormState next_state{};
  bool done = false;
};

// Fixed-capacity ring buffer; the oldest transition is overwritten first.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(const Transition& t);
  std::size_t size() const { return data_.size(); }
  std::size_t capacity() const { return capacity_; }
  // i = 0 is the oldest stored transition.
  const Transition& operator[](std::size_t i) const;

  // `count` distinct indices drawn uniformly (Floyd's algorithm).
  std::vector<std::size_t> sample_indices(std::size_t count, SplitMix64& rng) const;
  std::vector<Transition> sample(std::size_t count, SplitMix64& rng) const;

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;  // next slot to overwrite once full
  std::vector<Transition> data_;
};

// Ornstein-Uhlenbeck process x += theta * (0 - x) + sigma * N(0, 1).
struct OuNoise {
  double theta = 0.15;
  double sigma = 0.2;
  double value = 0.0;

  void reset() { value = 0.0; }
  double sample(SplitMix64& rng) {
    value += -theta * value + sigma * rng.normal();
    return value;
  }
};

// Column-major batch view of transitions.
struct Batch {
  Eigen::MatrixXd states;  // 3 x B
  Eigen::MatrixXd actions;  // 1 x B
  Eigen::RowVectorXd rewards;
  Eigen::MatrixXd next_states;  // 3 x B
  Eigen::RowVectorXd not_done;  // 1 - done

  static Batch from(const std::vector<Transition>& transitions);
  Eigen::Index size() const { return states.cols(); }
};

Mlp make_actor(const std::vector<std::size_t>& hidden, SplitMix64& rng);
Mlp make_critic(const std::vector<std::size_t>& hidden, SplitMix64& rng);

// Actor output for one normalized state, in [-1, 1].
double actor_forward(const Mlp& actor, const NormState& state);
// Q(s, a) with the action appended to the state at the input.
double critic_forward(const Mlp& critic, const NormState& state, double action);

struct LossAndGradients {
  double loss = 0.0;
  MlpGradients gradients;
};

// Mean squared TD error against r + gamma * (1 - done) * Q'(s', mu'(s')),
// with gradients w.r.t. the online critic.
LossAndGradients critic_loss(const Mlp& critic, const Mlp& target_actor,
                             const Mlp& target_critic, const Batch& batch, double gamma);

// -mean Q(s, mu(s)) with gradients w.r.t. the actor (critic held fixed).
LossAndGradients actor_loss(const Mlp& actor, const Mlp& critic, const Batch& batch);

struct DdpgHyperparams {
  std::vector<std::size_t> hidden{64, 64};
  double gamma = 0.99;
  double tau = 0.005;
  double actor_lr = 1e-4;
  double critic_lr = 1e-3;
};

struct UpdateLosses {
  double critic = 0.0;  // TD loss
  double actor = 0.0;  // mean Q(s, mu(s)), the quantity being ascended
};

// Online and target actor/critic with their optimizers.
class DdpgAgent {
 public:
  DdpgAgent(const DdpgHyperparams& params, std::uint64_t seed);

  double act(const NormState& state) const { return actor_forward(actor_, state); }

  // One critic step, one actor step, then soft target updates. Throws
  // NumericError if a loss or gradient is non-finite.
  UpdateLosses update(const Batch& batch);

  const Mlp& actor() const { return actor_; }
  const Mlp& critic() const { return critic_; }
  const Mlp& target_actor() const { return target_actor_; }
  const Mlp& target_critic() const { return target_critic_; }
  Mlp& actor() { return actor_; }
  Mlp& critic() { return critic_; }
  const DdpgHyperparams& hyperparams() const { return params_; }

 private:
  DdpgHyperparams params_;
  Mlp actor_;
  Mlp critic_;
  Mlp target_actor_;
  Mlp target_critic_;
  AdamOptimizer actor_opt_;
  AdamOptimizer critic_opt_;
};

// Deployable EcoFollower policy: actor plus the mappings around it.
struct Policy {
  Mlp actor;
  StateNormalizer normalizer;
  double action_scale = 3.0;  // m/s^2 per unit actor output
};

inline constexpr int kPolicyFormatVersion = 1;

// JSON container with format tag, version, and row-major layer weights.
void save_policy(const std::filesystem::path& path, const Policy& policy);
std::string policy_to_json(const Policy& policy);
// Throws LoadError on unreadable/truncated/versioned-wrong files and
// ConfigError if `expected_sizes` is given and does not match.
Policy load_policy(const std::filesystem::path& path,
                   const std::optional<std::vector<std::size_t>>& expected_sizes = {});
Policy policy_from_json(const std::string& text,
                        const std::optional<std::vector<std::size_t>>& expected_sizes = {});

class PolicyController final : public Controller {
 public:
  explicit PolicyController(Policy policy, std::string name = "ecofollower");

  std::string name() const override { return name_; }
  double accel(const ControlContext& context) const override;

 private:
  Policy policy_;
  std::string name_;
};

}  // namespace ecofollow
