#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "ecofollow/ddpg.hpp"
#include "ecofollow/objectives.hpp"
#include "ecofollow/traj_data.hpp"

namespace ecofollow {

struct TrainConfig {
  int episodes = 3000;
  double gamma = 0.99;
  double tau = 0.005;
  double actor_lr = 1e-4;
  double critic_lr = 1e-3;
  std::size_t batch_size = 64;
  std::size_t buffer_capacity = 100000;
  double ou_theta = 0.15;
  double ou_sigma = 0.2;  // at the first episode
  double ou_sigma_final = 0.02;  // at the last episode, linear in between
  std::size_t warmup_steps = 1000;
  std::vector<std::size_t> hidden{64, 64};
  std::size_t rolling_window = 50;
  std::uint64_t seed = 0;

  // Throws ArgumentError if out of range.
  void validate() const;
  double noise_sigma(int episode) const;
};

struct TrainLogRow {
  int episode = 0;
  double mean_reward = 0.0;  // mean per-step reward of the episode
  double rolling_reward = 0.0;  // mean of mean_reward over the last window
  long collisions_cum = 0;
  std::size_t steps = 0;
  double fuel_ml = 0.0;
};

struct TrainLog {
  std::vector<TrainLogRow> rows;
};

// CSV `episode,mean_reward,rolling_reward,collisions_cum,steps,fuel_ml`.
void write_train_log(std::ostream& out, const TrainLog& log);

struct TrainResult {
  Policy policy;
  TrainLog log;
  std::size_t buffer_size = 0;
  std::size_t updates = 0;
};

using EpisodeCallback = std::function<void(const TrainLogRow&)>;

// Runs `config.episodes` episodes, each on a training event drawn uniformly
// at random. One gradient update per environment step once the buffer holds
// both a batch and `warmup_steps` transitions. Fully determined by
// (events, configs, seed).
TrainResult train(std::span<const CarFollowingEvent> train_events, const EnvConfig& env,
                  const RewardConfig& reward_config, const VtMicroModel& fuel_model,
                  const TrainConfig& config, const EpisodeCallback& on_episode = {});

}  // namespace ecofollow
