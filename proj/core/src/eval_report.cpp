#include "ecofollow/eval_report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#include "ecofollow/error.hpp"
#include "ecofollow/objectives.hpp"

namespace ecofollow {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double ratio(double sum, double n) { return n > 0 ? sum / n : kNaN; }

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

EventIndicators indicators_for_trace(const SimulatedTrace& trace, const VtMicroModel& fuel,
                                     const IndicatorConfig& config) {
  EventIndicators ind;
  ind.event_id = trace.event_id;
  ind.steps = trace.size();
  ind.duration = trace.duration();
  ind.collided = trace.collided;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    if (const auto t = ttc(trace.spacing[k], trace.rel_speed[k])) {
      ind.ttc_sum += std::min(*t, config.ttc_cap);
      ++ind.ttc_count;
    }
    if (k > 0) {
      const double j = jerk(trace.accel[k], trace.accel[k - 1], trace.dt);
      ind.abs_jerk_sum += std::abs(j);
      ind.sq_jerk_sum += j * j;
      ++ind.jerk_count;
    }
    if (const auto h = time_headway(std::max(trace.spacing[k], 0.0), trace.follow_speed[k],
                                    config.speed_floor)) {
      ind.headway_sum += *h;
      ++ind.headway_count;
    }
    ind.fuel_ml += fuel.rate(trace.follow_speed[k], trace.accel[k]) * trace.dt;
  }
  return ind;
}

IndicatorSummary aggregate(const std::string& name, std::vector<EventIndicators> per_event,
                           const IndicatorConfig& config) {
  std::sort(per_event.begin(), per_event.end(),
            [](const EventIndicators& a, const EventIndicators& b) {
              return a.event_id < b.event_id;
            });
  IndicatorSummary s;
  s.name = name;
  s.events_evaluated = per_event.size();

  if (!config.per_event_means) {
    double ttc_sum = 0, abs_jerk = 0, sq_jerk = 0, headway = 0, fuel = 0, duration = 0;
    double ttc_n = 0, jerk_n = 0, headway_n = 0;
    for (const auto& e : per_event) {
      ttc_sum += e.ttc_sum;
      ttc_n += static_cast<double>(e.ttc_count);
      abs_jerk += e.abs_jerk_sum;
      sq_jerk += e.sq_jerk_sum;
      jerk_n += static_cast<double>(e.jerk_count);
      headway += e.headway_sum;
      headway_n += static_cast<double>(e.headway_count);
      fuel += e.fuel_ml;
      duration += e.duration;
      s.steps += e.steps;
      if (e.collided) ++s.collisions;
    }
    s.mean_ttc = ratio(ttc_sum, ttc_n);
    s.mean_abs_jerk = ratio(abs_jerk, jerk_n);
    s.rms_jerk = std::sqrt(ratio(sq_jerk, jerk_n));
    s.mean_headway = ratio(headway, headway_n);
    s.mean_fuel_rate = ratio(fuel, duration);
    return s;
  }

  struct Mean {
    double sum = 0.0;
    double n = 0.0;
    void add(double v) {
      if (std::isfinite(v)) {
        sum += v;
        n += 1.0;
      }
    }
    double value() const { return ratio(sum, n); }
  } ttc_m, abs_jerk_m, rms_jerk_m, headway_m, fuel_m;
  for (const auto& e : per_event) {
    ttc_m.add(ratio(e.ttc_sum, static_cast<double>(e.ttc_count)));
    abs_jerk_m.add(ratio(e.abs_jerk_sum, static_cast<double>(e.jerk_count)));
    rms_jerk_m.add(std::sqrt(ratio(e.sq_jerk_sum, static_cast<double>(e.jerk_count))));
    headway_m.add(ratio(e.headway_sum, static_cast<double>(e.headway_count)));
    fuel_m.add(ratio(e.fuel_ml, e.duration));
    s.steps += e.steps;
    if (e.collided) ++s.collisions;
  }
  s.mean_ttc = ttc_m.value();
  s.mean_abs_jerk = abs_jerk_m.value();
  s.rms_jerk = rms_jerk_m.value();
  s.mean_headway = headway_m.value();
  s.mean_fuel_rate = fuel_m.value();
  return s;
}

namespace {

template <typename TraceFn>
EvaluationResult evaluate_with(const std::string& name,
                               std::span<const CarFollowingEvent> events,
                               const VtMicroModel& fuel, const IndicatorConfig& config,
                               TraceFn&& make_trace) {
  if (events.empty()) throw ArgumentError("evaluation needs at least one event");

  struct Slot {
    std::optional<SimulatedTrace> trace;
    std::optional<EventIndicators> indicators;
    std::string error;
  };
  std::vector<Slot> slots(events.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < events.size(); i += stride) {
      try {
        SimulatedTrace trace = make_trace(events[i]);
        slots[i].indicators = indicators_for_trace(trace, fuel, config);
        slots[i].trace = std::move(trace);
      } catch (const std::exception& e) {
        slots[i].error = e.what();
      }
    }
  };

  const std::size_t threads =
      std::clamp<std::size_t>(config.threads, 1, std::max<std::size_t>(1, events.size()));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }

  std::vector<std::size_t> order(events.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return events[a].event_id < events[b].event_id;
  });

  EvaluationResult result;
  for (auto i : order) {
    if (slots[i].trace) {
      result.traces.push_back(std::move(*slots[i].trace));
      result.per_event.push_back(std::move(*slots[i].indicators));
    } else {
      result.failures.push_back({events[i].event_id, slots[i].error});
    }
  }
  result.summary = aggregate(name, result.per_event, config);
  result.summary.failed_events = result.failures.size();
  return result;
}

}  // namespace

EvaluationResult evaluate_controller(const Controller& controller,
                                     std::span<const CarFollowingEvent> events,
                                     const EnvConfig& env, const VtMicroModel& fuel,
                                     const IndicatorConfig& config) {
  return evaluate_with(controller.name(), events, fuel, config,
                       [&](const CarFollowingEvent& e) { return rollout(e, controller, env); });
}

EvaluationResult evaluate_ground_truth(std::span<const CarFollowingEvent> events,
                                       const VtMicroModel& fuel,
                                       const IndicatorConfig& config) {
  return evaluate_with(kGroundTruthName, events, fuel, config, [](const CarFollowingEvent& e) {
    if (e.samples.size() < 2) {
      throw ArgumentError("event '" + e.event_id + "' has fewer than 2 samples");
    }
    return recorded_trace(e);
  });
}

double fuel_saving_pct(double controller_fuel_rate, double baseline_fuel_rate) {
  return 100.0 * (1.0 - controller_fuel_rate / baseline_fuel_rate);
}

ComparisonReport compare(std::span<const IndicatorSummary> summaries,
                         const std::string& baseline) {
  const auto base = std::find_if(summaries.begin(), summaries.end(),
                                 [&](const IndicatorSummary& s) { return s.name == baseline; });
  if (base == summaries.end()) {
    throw ArgumentError("comparison needs a '" + baseline + "' summary");
  }
  ComparisonReport report;
  report.baseline = baseline;
  for (const auto& s : summaries) {
    ComparisonRow row;
    row.summary = s;
    row.fuel_saving_pct = fuel_saving_pct(s.mean_fuel_rate, base->mean_fuel_rate);
    row.delta_ttc = s.mean_ttc - base->mean_ttc;
    row.delta_jerk = s.mean_abs_jerk - base->mean_abs_jerk;
    row.delta_headway = s.mean_headway - base->mean_headway;
    row.delta_fuel = s.mean_fuel_rate - base->mean_fuel_rate;
    report.rows.push_back(row);
  }
  return report;
}

std::string ComparisonReport::render_table() const {
  std::ostringstream out;
  out << std::left << std::setw(16) << "Model" << std::right << std::setw(10) << "TTC (s)"
      << std::setw(14) << "Jerk (m/s^3)" << std::setw(18) << "Time Headway (s)"
      << std::setw(24) << "Fuel Consumption (mL/s)" << std::setw(16) << "Fuel saving (%)"
      << std::setw(12) << "Collisions" << '\n';
  out << std::string(110, '-') << '\n';
  out << std::fixed;
  for (const auto& row : rows) {
    const auto& s = row.summary;
    out << std::left << std::setw(16) << s.name << std::right << std::setprecision(3)
        << std::setw(10) << s.mean_ttc << std::setw(14) << s.mean_abs_jerk << std::setw(18)
        << s.mean_headway << std::setw(24) << s.mean_fuel_rate << std::setprecision(2)
        << std::setw(16) << row.fuel_saving_pct << std::setw(12) << s.collisions << '\n';
  }
  return out.str();
}

nlohmann::json summary_to_json(const IndicatorSummary& s) {
  return {{"name", s.name},
          {"indicators",
           {{"ttc", number_or_null(s.mean_ttc)},
            {"jerk", number_or_null(s.mean_abs_jerk)},
            {"rms_jerk", number_or_null(s.rms_jerk)},
            {"time_headway", number_or_null(s.mean_headway)},
            {"fuel_rate", number_or_null(s.mean_fuel_rate)}}},
          {"collisions", s.collisions},
          {"events", s.events_evaluated},
          {"failed_events", s.failed_events},
          {"steps", s.steps}};
}

nlohmann::json ComparisonReport::to_json(const nlohmann::json& config_echo) const {
  nlohmann::json controllers = nlohmann::json::array();
  nlohmann::json savings = nlohmann::json::object();
  for (const auto& row : rows) {
    auto c = summary_to_json(row.summary);
    c["fuel_saving_pct"] = number_or_null(row.fuel_saving_pct);
    c["delta_vs_baseline"] = {{"ttc", number_or_null(row.delta_ttc)},
                              {"jerk", number_or_null(row.delta_jerk)},
                              {"time_headway", number_or_null(row.delta_headway)},
                              {"fuel_rate", number_or_null(row.delta_fuel)}};
    savings[row.summary.name] = number_or_null(row.fuel_saving_pct);
    controllers.push_back(std::move(c));
  }
  return {{"controllers", controllers},
          {"baseline", baseline},
          {"fuel_saving_pct", savings},
          {"config_echo", config_echo}};
}

std::map<std::string, Histogram> export_distributions(
    std::span<const SimulatedTrace> traces, const VtMicroModel& fuel,
    const IndicatorConfig& config) {
  if (traces.empty()) throw ArgumentError("export_distributions needs at least one trace");
  std::vector<double> ttc_v, jerk_v, headway_v, fuel_v;
  for (const auto& trace : traces) {
    for (std::size_t k = 0; k < trace.size(); ++k) {
      if (const auto t = signed_ttc(trace.spacing[k], trace.rel_speed[k])) ttc_v.push_back(*t);
      if (k > 0) jerk_v.push_back(jerk(trace.accel[k], trace.accel[k - 1], trace.dt));
      if (const auto h = time_headway(std::max(trace.spacing[k], 0.0), trace.follow_speed[k],
                                      config.speed_floor)) {
        headway_v.push_back(*h);
      }
      fuel_v.push_back(fuel.rate(trace.follow_speed[k], trace.accel[k]));
    }
  }
  return {{"ttc", make_histogram(ttc_v, config.ttc_bins)},
          {"jerk", make_histogram(jerk_v, config.jerk_bins)},
          {"headway", make_histogram(headway_v, config.headway_bins)},
          {"fuel_rate", make_histogram(fuel_v, config.fuel_bins)}};
}

}  // namespace ecofollow
