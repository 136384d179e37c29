#include "ecofollow/train.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ecofollow/csv.hpp"
#include "ecofollow/error.hpp"

namespace ecofollow {

void TrainConfig::validate() const {
  if (episodes < 1) throw ArgumentError("episodes must be >= 1");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ArgumentError("gamma must lie in (0, 1)");
  if (!(tau > 0.0 && tau <= 1.0)) throw ArgumentError("tau must lie in (0, 1]");
  if (!(actor_lr > 0.0) || !(critic_lr > 0.0)) {
    throw ArgumentError("learning rates must be positive");
  }
  if (batch_size == 0) throw ArgumentError("batch_size must be positive");
  if (buffer_capacity < batch_size) {
    throw ArgumentError("buffer_capacity must be at least batch_size");
  }
  if (rolling_window == 0) throw ArgumentError("rolling_window must be positive");
  if (hidden.empty()) throw ArgumentError("at least one hidden layer is required");
}

double TrainConfig::noise_sigma(int episode) const {
  if (episodes <= 1) return ou_sigma;
  const double frac = static_cast<double>(episode) / static_cast<double>(episodes - 1);
  return ou_sigma + (ou_sigma_final - ou_sigma) * frac;
}

void write_train_log(std::ostream& out, const TrainLog& log) {
  using csv::format_double;
  out << "episode,mean_reward,rolling_reward,collisions_cum,steps,fuel_ml\n";
  for (const auto& r : log.rows) {
    out << r.episode << ',' << format_double(r.mean_reward) << ','
        << format_double(r.rolling_reward) << ',' << r.collisions_cum << ',' << r.steps
        << ',' << format_double(r.fuel_ml) << '\n';
  }
}

TrainResult train(std::span<const CarFollowingEvent> train_events, const EnvConfig& env_config,
                  const RewardConfig& reward_config, const VtMicroModel& fuel_model,
                  const TrainConfig& config, const EpisodeCallback& on_episode) {
  config.validate();
  if (train_events.empty()) throw ArgumentError("training set is empty");
  for (const auto& e : train_events) {
    if (e.samples.size() < 2) {
      throw ArgumentError("training event '" + e.event_id + "' has fewer than 2 samples");
    }
  }

  SplitMix64 event_rng(derive_seed(config.seed, "episode-draw"));
  SplitMix64 noise_rng(derive_seed(config.seed, "exploration"));
  SplitMix64 batch_rng(derive_seed(config.seed, "replay"));

  DdpgHyperparams hyper;
  hyper.hidden = config.hidden;
  hyper.gamma = config.gamma;
  hyper.tau = config.tau;
  hyper.actor_lr = config.actor_lr;
  hyper.critic_lr = config.critic_lr;
  DdpgAgent agent(hyper, derive_seed(config.seed, "agent"));

  const StateNormalizer normalizer;
  const double action_scale = env_config.a_max;
  ReplayBuffer buffer(config.buffer_capacity);
  Env env(env_config);
  OuNoise noise{config.ou_theta, config.ou_sigma, 0.0};

  TrainResult result;
  long total_steps = 0;
  long collisions = 0;
  for (int episode = 0; episode < config.episodes; ++episode) {
    const auto& event =
        train_events[static_cast<std::size_t>(event_rng.below(train_events.size()))];
    noise.sigma = config.noise_sigma(episode);
    noise.reset();
    env.reset(event);

    double prev_accel = 0.0;
    double reward_sum = 0.0;
    double fuel_ml = 0.0;
    std::size_t steps = 0;
    bool collided = false;
    while (!env.done()) {
      const EnvState state = env.state();
      const NormState norm = normalizer.normalize(state);
      const double y = std::clamp(agent.act(norm) + noise.sample(noise_rng), -1.0, 1.0);
      const double accel = env_config.clamp(y * action_scale);
      const StepOutcome out = env.step(accel);

      StepRewardInputs in;
      in.speed = state.follow_speed;
      in.accel = accel;
      in.accel_prev = prev_accel;
      in.dt = event.dt;
      in.next_state = out.next_state;
      in.collided = out.collided;
      const RewardBreakdown r = reward(in, reward_config, fuel_model);
      if (!std::isfinite(r.total)) {
        throw TrainingError("non-finite reward", episode, total_steps);
      }

      buffer.push({norm, accel / action_scale, r.total,
                   normalizer.normalize(out.next_state), out.collided});
      fuel_ml += fuel_model.rate(state.follow_speed, accel) * event.dt;
      reward_sum += r.total;
      prev_accel = accel;
      ++steps;
      ++total_steps;
      collided = collided || out.collided;

      if (buffer.size() >= config.batch_size &&
          static_cast<std::size_t>(total_steps) >= config.warmup_steps) {
        try {
          agent.update(Batch::from(buffer.sample(config.batch_size, batch_rng)));
        } catch (const NumericError& e) {
          throw TrainingError(e.what(), episode, total_steps);
        }
        ++result.updates;
      }
    }
    if (collided) ++collisions;

    TrainLogRow row;
    row.episode = episode;
    row.mean_reward = reward_sum / static_cast<double>(steps);
    row.collisions_cum = collisions;
    row.steps = steps;
    row.fuel_ml = fuel_ml;
    result.log.rows.push_back(row);
    const std::size_t n = std::min(result.log.rows.size(), config.rolling_window);
    double window_sum = 0.0;
    for (std::size_t i = result.log.rows.size() - n; i < result.log.rows.size(); ++i) {
      window_sum += result.log.rows[i].mean_reward;
    }
    result.log.rows.back().rolling_reward = window_sum / static_cast<double>(n);
    row = result.log.rows.back();
    if (on_episode) on_episode(row);
  }

  result.policy.actor = agent.actor();
  result.policy.normalizer = normalizer;
  result.policy.action_scale = action_scale;
  result.buffer_size = buffer.size();
  return result;
}

}  // namespace ecofollow
