#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ecofollow/env.hpp"
#include "ecofollow/histogram.hpp"
#include "ecofollow/vt_micro.hpp"

namespace ecofollow {

inline constexpr const char* kGroundTruthName = "ground_truth";

// How per-step values are turned into Table-1 style indicators.
struct IndicatorConfig {
  double ttc_cap = 50.0;  // s, applied before averaging closing-gap TTC
  double speed_floor = 0.1;  // m/s, headway undefined below
  bool per_event_means = false;  // mean of per-event means instead of pooled steps
  BinSpec ttc_bins{-25.0, 25.0, 50};
  BinSpec jerk_bins{-2.0, 2.0, 80};
  BinSpec headway_bins{0.0, 10.0, 50};
  BinSpec fuel_bins{0.0, 5.0, 50};
  unsigned threads = 1;
};

// Sufficient statistics of one trace.
struct EventIndicators {
  std::string event_id;
  std::size_t steps = 0;
  double ttc_sum = 0.0;
  std::size_t ttc_count = 0;
  double abs_jerk_sum = 0.0;
  double sq_jerk_sum = 0.0;
  std::size_t jerk_count = 0;
  double headway_sum = 0.0;
  std::size_t headway_count = 0;
  double fuel_ml = 0.0;
  double duration = 0.0;
  bool collided = false;
};

// TTC over closing steps (capped), |jerk| over rows k >= 1 (the first row has
// no preceding acceleration), headway over rows above the speed floor, fuel by
// left-rectangle integration.
EventIndicators indicators_for_trace(const SimulatedTrace& trace, const VtMicroModel& fuel,
                                     const IndicatorConfig& config);

struct IndicatorSummary {
  std::string name;
  double mean_ttc = 0.0;  // s
  double mean_abs_jerk = 0.0;  // m/s^3
  double rms_jerk = 0.0;  // m/s^3
  double mean_headway = 0.0;  // s
  double mean_fuel_rate = 0.0;  // mL/s
  std::size_t events_evaluated = 0;
  std::size_t collisions = 0;
  std::size_t failed_events = 0;
  std::size_t steps = 0;
};

// Deterministic reduction in event_id order. A mean over an empty set is NaN.
IndicatorSummary aggregate(const std::string& name, std::vector<EventIndicators> per_event,
                           const IndicatorConfig& config);

struct EventFailure {
  std::string event_id;
  std::string message;
};

struct EvaluationResult {
  IndicatorSummary summary;
  std::vector<SimulatedTrace> traces;  // sorted by event_id
  std::vector<EventIndicators> per_event;  // sorted by event_id
  std::vector<EventFailure> failures;
};

// Rolls the controller out on every event. A failing event is recorded and
// excluded; it never aborts the batch. Parallel over `config.threads`.
EvaluationResult evaluate_controller(const Controller& controller,
                                     std::span<const CarFollowingEvent> events,
                                     const EnvConfig& env, const VtMicroModel& fuel,
                                     const IndicatorConfig& config);

// Indicators of the recorded follower itself.
EvaluationResult evaluate_ground_truth(std::span<const CarFollowingEvent> events,
                                       const VtMicroModel& fuel,
                                       const IndicatorConfig& config);

struct ComparisonRow {
  IndicatorSummary summary;
  double fuel_saving_pct = 0.0;  // 100 * (1 - fuel / fuel_baseline)
  double delta_ttc = 0.0;  // controller minus baseline
  double delta_jerk = 0.0;
  double delta_headway = 0.0;
  double delta_fuel = 0.0;
};

struct ComparisonReport {
  std::string baseline = kGroundTruthName;
  std::vector<ComparisonRow> rows;

  // Aligned text table: Model, TTC, Jerk, Time Headway, Fuel Consumption.
  std::string render_table() const;
  nlohmann::json to_json(const nlohmann::json& config_echo = {}) const;
};

double fuel_saving_pct(double controller_fuel_rate, double baseline_fuel_rate);

// Throws ArgumentError if no summary is named `baseline`.
ComparisonReport compare(std::span<const IndicatorSummary> summaries,
                         const std::string& baseline = kGroundTruthName);

// Per-indicator histograms ("ttc", "jerk", "headway", "fuel_rate") with the
// fixed bin edges from `config`. TTC is the signed value over rows with
// non-zero relative speed.
std::map<std::string, Histogram> export_distributions(
    std::span<const SimulatedTrace> traces, const VtMicroModel& fuel,
    const IndicatorConfig& config);

nlohmann::json summary_to_json(const IndicatorSummary& summary);

}  // namespace ecofollow
