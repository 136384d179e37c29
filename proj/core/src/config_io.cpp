#include "ecofollow/config_io.hpp"

#include <fstream>
#include <initializer_list>
#include <string>

#include "ecofollow/error.hpp"

namespace ecofollow::config {
namespace {

using nlohmann::json;

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const char* block) {
  if (j.is_null()) return;
  if (!j.is_object()) throw ConfigError(std::string(block) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ConfigError("unknown key '" + key + "' in " + block + " config");
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.is_null() || !j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

json bins_to_json(const BinSpec& b) { return {{"lo", b.lo}, {"hi", b.hi}, {"count", b.count}}; }

void read_bins(const json& j, const char* key, BinSpec& out) {
  if (j.is_null() || !j.contains(key)) return;
  const auto& b = j.at(key);
  check_keys(b, {"lo", "hi", "count"}, key);
  read(b, "lo", out.lo);
  read(b, "hi", out.hi);
  read(b, "count", out.count);
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
}

ColumnMapping mapping_from_json(const json& j) {
  check_keys(j,
             {"event_id", "t", "x_lead", "v_lead", "x_follow", "v_follow", "time_scale",
              "position_scale", "speed_scale"},
             "column mapping");
  ColumnMapping m;
  read(j, "event_id", m.event_id);
  read(j, "t", m.time);
  read(j, "x_lead", m.lead_position);
  read(j, "v_lead", m.lead_speed);
  read(j, "x_follow", m.follow_position);
  read(j, "v_follow", m.follow_speed);
  read(j, "time_scale", m.time_scale);
  read(j, "position_scale", m.position_scale);
  read(j, "speed_scale", m.speed_scale);
  return m;
}

json to_json(const ColumnMapping& m) {
  return {{"event_id", m.event_id},          {"t", m.time},
          {"x_lead", m.lead_position},       {"v_lead", m.lead_speed},
          {"x_follow", m.follow_position},   {"v_follow", m.follow_speed},
          {"time_scale", m.time_scale},      {"position_scale", m.position_scale},
          {"speed_scale", m.speed_scale}};
}

IdmParams idm_from_json(const json& j) {
  check_keys(j, {"a_max", "v_desired", "beta", "s_jam", "T_headway", "a_comf"}, "idm");
  IdmParams p;
  read(j, "a_max", p.a_max);
  read(j, "v_desired", p.v_desired);
  read(j, "beta", p.beta);
  read(j, "s_jam", p.s_jam);
  read(j, "T_headway", p.T_headway);
  read(j, "a_comf", p.a_comf);
  try {
    p.validate();
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what());
  }
  return p;
}

json to_json(const IdmParams& p) {
  return {{"a_max", p.a_max}, {"v_desired", p.v_desired}, {"beta", p.beta},
          {"s_jam", p.s_jam}, {"T_headway", p.T_headway}, {"a_comf", p.a_comf}};
}

EnvConfig env_from_json(const json& j) {
  check_keys(j, {"a_min", "a_max", "collision_gap"}, "env");
  EnvConfig c;
  read(j, "a_min", c.a_min);
  read(j, "a_max", c.a_max);
  read(j, "collision_gap", c.collision_gap);
  if (!(c.a_min < 0.0 && c.a_max > 0.0)) {
    throw ConfigError("env action bounds must satisfy a_min < 0 < a_max");
  }
  return c;
}

json to_json(const EnvConfig& c) {
  return {{"a_min", c.a_min}, {"a_max", c.a_max}, {"collision_gap", c.collision_gap}};
}

RewardConfig reward_from_json(const json& j) {
  check_keys(j,
             {"weights", "headway", "jerk_scale", "fuel_scale", "collision_penalty",
              "ttc_floor", "speed_floor"},
             "reward");
  RewardConfig c;
  if (!j.is_null() && j.contains("weights")) {
    const auto& w = j.at("weights");
    check_keys(w, {"ttc", "headway", "fuel", "jerk"}, "reward.weights");
    read(w, "ttc", c.weights.ttc);
    read(w, "headway", c.weights.headway);
    read(w, "fuel", c.weights.fuel);
    read(w, "jerk", c.weights.jerk);
  }
  if (!j.is_null() && j.contains("headway")) {
    const auto& h = j.at("headway");
    check_keys(h, {"mu", "sigma"}, "reward.headway");
    read(h, "mu", c.headway.mu);
    read(h, "sigma", c.headway.sigma);
  }
  read(j, "jerk_scale", c.jerk_scale);
  read(j, "fuel_scale", c.fuel_scale);
  read(j, "collision_penalty", c.collision_penalty);
  read(j, "ttc_floor", c.ttc_floor);
  read(j, "speed_floor", c.speed_floor);
  if (!(c.headway.sigma > 0.0)) throw ConfigError("headway sigma must be positive");
  if (!(c.jerk_scale > 0.0) || !(c.fuel_scale > 0.0)) {
    throw ConfigError("jerk_scale and fuel_scale must be positive");
  }
  return c;
}

json to_json(const RewardConfig& c) {
  return {{"weights",
           {{"ttc", c.weights.ttc},
            {"headway", c.weights.headway},
            {"fuel", c.weights.fuel},
            {"jerk", c.weights.jerk}}},
          {"headway", {{"mu", c.headway.mu}, {"sigma", c.headway.sigma}}},
          {"jerk_scale", c.jerk_scale},
          {"fuel_scale", c.fuel_scale},
          {"collision_penalty", c.collision_penalty},
          {"ttc_floor", c.ttc_floor},
          {"speed_floor", c.speed_floor}};
}

TrainConfig train_from_json(const json& j) {
  check_keys(j,
             {"episodes", "gamma", "tau", "actor_lr", "critic_lr", "batch_size",
              "buffer_capacity", "ou_theta", "ou_sigma", "ou_sigma_final", "warmup_steps",
              "hidden", "rolling_window", "seed"},
             "train");
  TrainConfig c;
  read(j, "episodes", c.episodes);
  read(j, "gamma", c.gamma);
  read(j, "tau", c.tau);
  read(j, "actor_lr", c.actor_lr);
  read(j, "critic_lr", c.critic_lr);
  read(j, "batch_size", c.batch_size);
  read(j, "buffer_capacity", c.buffer_capacity);
  read(j, "ou_theta", c.ou_theta);
  read(j, "ou_sigma", c.ou_sigma);
  read(j, "ou_sigma_final", c.ou_sigma_final);
  read(j, "warmup_steps", c.warmup_steps);
  read(j, "hidden", c.hidden);
  read(j, "rolling_window", c.rolling_window);
  read(j, "seed", c.seed);
  try {
    c.validate();
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what());
  }
  return c;
}

json to_json(const TrainConfig& c) {
  return {{"episodes", c.episodes},
          {"gamma", c.gamma},
          {"tau", c.tau},
          {"actor_lr", c.actor_lr},
          {"critic_lr", c.critic_lr},
          {"batch_size", c.batch_size},
          {"buffer_capacity", c.buffer_capacity},
          {"ou_theta", c.ou_theta},
          {"ou_sigma", c.ou_sigma},
          {"ou_sigma_final", c.ou_sigma_final},
          {"warmup_steps", c.warmup_steps},
          {"hidden", c.hidden},
          {"rolling_window", c.rolling_window},
          {"seed", c.seed}};
}

IndicatorConfig indicators_from_json(const json& j) {
  check_keys(j,
             {"ttc_cap", "speed_floor", "per_event_means", "aggregation", "ttc_bins",
              "jerk_bins", "headway_bins", "fuel_bins", "threads"},
             "indicators");
  IndicatorConfig c;
  read(j, "ttc_cap", c.ttc_cap);
  read(j, "speed_floor", c.speed_floor);
  read(j, "per_event_means", c.per_event_means);
  read_bins(j, "ttc_bins", c.ttc_bins);
  read_bins(j, "jerk_bins", c.jerk_bins);
  read_bins(j, "headway_bins", c.headway_bins);
  read_bins(j, "fuel_bins", c.fuel_bins);
  read(j, "threads", c.threads);
  return c;
}

json to_json(const IndicatorConfig& c) {
  return {{"ttc_cap", c.ttc_cap},
          {"speed_floor", c.speed_floor},
          {"per_event_means", c.per_event_means},
          {"aggregation", c.per_event_means ? "per_event_means" : "pooled_steps"},
          {"ttc_bins", bins_to_json(c.ttc_bins)},
          {"jerk_bins", bins_to_json(c.jerk_bins)},
          {"headway_bins", bins_to_json(c.headway_bins)},
          {"fuel_bins", bins_to_json(c.fuel_bins)}};
}

}  // namespace ecofollow::config
