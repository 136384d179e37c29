#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "ecofollow/env.hpp"
#include "ecofollow/eval_report.hpp"
#include "ecofollow/idm.hpp"
#include "ecofollow/objectives.hpp"
#include "ecofollow/traj_data.hpp"
#include "ecofollow/train.hpp"

// JSON (de)serialization of the configuration blocks. Every field is optional
// and falls back to the struct default; unknown keys raise ConfigError so
// typos do not pass silently.
namespace ecofollow::config {

nlohmann::json read_json_file(const std::filesystem::path& path);

ColumnMapping mapping_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ColumnMapping& m);

IdmParams idm_from_json(const nlohmann::json& j);
nlohmann::json to_json(const IdmParams& p);

EnvConfig env_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EnvConfig& c);

// `{"weights":{...}, "headway":{"mu","sigma"}, "jerk_scale", "fuel_scale",
//   "collision_penalty", "ttc_floor", "speed_floor"}`
RewardConfig reward_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RewardConfig& c);

TrainConfig train_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TrainConfig& c);

IndicatorConfig indicators_from_json(const nlohmann::json& j);
nlohmann::json to_json(const IndicatorConfig& c);

}  // namespace ecofollow::config
