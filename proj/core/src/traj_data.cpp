#include "ecofollow/traj_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "ecofollow/csv.hpp"
#include "ecofollow/error.hpp"
#include "ecofollow/rng.hpp"

namespace ecofollow {
namespace {

struct RawRow {
  double time;
  TrajectorySample sample;
};

int require_column(const csv::Table& table, const std::string& name,
                   std::string_view field) {
  const int index = table.column(name);
  if (index < 0) {
    throw SchemaError("missing column '" + name + "' (mapped to " +
                      std::string(field) + ")");
  }
  return index;
}

double median(std::vector<double> values) {
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (values.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

// Builds one event from raw rows. Returns a rejection reason, or an empty
// string on success.
std::string assemble_event(const std::string& id, std::vector<RawRow>& rows,
                           const ColumnMapping& mapping, const LoadOptions& options,
                           CarFollowingEvent& out) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const RawRow& a, const RawRow& b) { return a.time < b.time; });

  out.event_id = id;
  out.samples.clear();
  out.samples.reserve(rows.size());
  const double t0 = rows.front().time;
  for (const auto& row : rows) {
    TrajectorySample s = row.sample;
    // Rebase before scaling so large absolute clocks keep full precision.
    s.time = (row.time - t0) * mapping.time_scale;
    if (!std::isfinite(s.time) || !std::isfinite(s.lead_position) ||
        !std::isfinite(s.lead_speed) || !std::isfinite(s.follow_position) ||
        !std::isfinite(s.follow_speed)) {
      throw DataError("event '" + id + "': non-finite value at t=" +
                      csv::format_double(s.time));
    }
    if (s.lead_speed < 0.0 || s.follow_speed < 0.0) {
      throw DataError("event '" + id + "': negative speed at t=" +
                      csv::format_double(s.time));
    }
    out.samples.push_back(s);
  }

  if (out.samples.size() < 2) return "fewer than 2 samples";

  std::vector<double> deltas(out.samples.size() - 1);
  for (std::size_t k = 0; k + 1 < out.samples.size(); ++k) {
    deltas[k] = out.samples[k + 1].time - out.samples[k].time;
  }
  out.dt = median(deltas);
  if (!(out.dt > 0.0)) {
    throw DataError("event '" + id + "': duplicate timestamps");
  }
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    if (std::abs(deltas[k] - out.dt) > options.dt_tolerance) {
      throw DataError("event '" + id + "': non-uniform timestep at t=" +
                      csv::format_double(out.samples[k].time) + " (delta " +
                      csv::format_double(deltas[k]) + ", expected " +
                      csv::format_double(out.dt) + ")");
    }
  }
  if (options.expected_dt > 0.0 &&
      std::abs(out.dt - options.expected_dt) > options.dt_tolerance) {
    throw DataError("event '" + id + "': timestep " + csv::format_double(out.dt) +
                    " differs from expected " + csv::format_double(options.expected_dt));
  }

  if (out.duration() < options.min_duration - options.dt_tolerance) {
    return "duration " + csv::format_double(out.duration()) + " s below minimum " +
           csv::format_double(options.min_duration) + " s";
  }
  for (const auto& s : out.samples) {
    if (!(s.gap() > 0.0)) {
      return "non-positive gap at t=" + csv::format_double(s.time);
    }
  }
  return {};
}

}  // namespace

LoadResult load_events_detailed(std::istream& in, const ColumnMapping& mapping,
                                const LoadOptions& options) {
  const csv::Table table = csv::read(in);
  const int c_id = require_column(table, mapping.event_id, "event_id");
  const int c_t = require_column(table, mapping.time, "t");
  const int c_xl = require_column(table, mapping.lead_position, "x_lead");
  const int c_vl = require_column(table, mapping.lead_speed, "v_lead");
  const int c_xf = require_column(table, mapping.follow_position, "x_follow");
  const int c_vf = require_column(table, mapping.follow_speed, "v_follow");
  const auto width = static_cast<std::size_t>(
      std::max({c_id, c_t, c_xl, c_vl, c_xf, c_vf}) + 1);

  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<RawRow>> groups;
  LoadResult result;
  std::size_t line = 1;
  for (const auto& fields : table.rows) {
    ++line;
    if (fields.size() < width) {
      throw SchemaError("line " + std::to_string(line) + ": expected at least " +
                        std::to_string(width) + " fields, got " +
                        std::to_string(fields.size()));
    }
    const std::string context = "line " + std::to_string(line);
    const std::string& id = fields[static_cast<std::size_t>(c_id)];
    auto field = [&](int c) {
      return csv::parse_double(fields[static_cast<std::size_t>(c)], context);
    };
    RawRow row{};
    row.time = field(c_t);
    row.sample.lead_position = field(c_xl) * mapping.position_scale;
    row.sample.lead_speed = field(c_vl) * mapping.speed_scale;
    row.sample.follow_position = field(c_xf) * mapping.position_scale;
    row.sample.follow_speed = field(c_vf) * mapping.speed_scale;
    auto [it, inserted] = groups.try_emplace(id);
    if (inserted) order.push_back(id);
    it->second.push_back(row);
    ++result.rows_read;
  }

  for (const auto& id : order) {
    CarFollowingEvent event;
    const std::string reason = assemble_event(id, groups[id], mapping, options, event);
    if (reason.empty()) {
      result.events.push_back(std::move(event));
    } else {
      result.rejected.push_back({id, reason});
    }
  }
  return result;
}

LoadResult load_events_detailed(const std::filesystem::path& path,
                                const ColumnMapping& mapping, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path.string() + "'");
  return load_events_detailed(in, mapping, options);
}

std::vector<CarFollowingEvent> load_events(const std::filesystem::path& path,
                                           const ColumnMapping& mapping,
                                           const LoadOptions& options) {
  return load_events_detailed(path, mapping, options).events;
}

void write_events(std::ostream& out, std::span<const CarFollowingEvent> events) {
  using csv::format_double;
  out << "event_id,t,x_lead,v_lead,x_follow,v_follow\n";
  for (const auto& event : events) {
    for (const auto& s : event.samples) {
      out << event.event_id << ',' << format_double(s.time) << ','
          << format_double(s.lead_position) << ',' << format_double(s.lead_speed) << ','
          << format_double(s.follow_position) << ',' << format_double(s.follow_speed)
          << '\n';
    }
  }
}

void write_events(const std::filesystem::path& path,
                  std::span<const CarFollowingEvent> events) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write '" + path.string() + "'");
  write_events(out, events);
}

void validate_event(const CarFollowingEvent& event, double min_duration,
                    double dt_tolerance) {
  const auto fail = [&](const std::string& what) {
    throw DataError("event '" + event.event_id + "': " + what);
  };
  if (event.samples.size() < 2) fail("fewer than 2 samples");
  if (!(event.dt > 0.0)) fail("dt must be positive");
  for (std::size_t k = 0; k < event.samples.size(); ++k) {
    const auto& s = event.samples[k];
    if (s.lead_speed < 0.0 || s.follow_speed < 0.0) fail("negative speed");
    if (!(s.gap() > 0.0)) fail("non-positive gap");
    if (k > 0 &&
        std::abs(s.time - event.samples[k - 1].time - event.dt) > dt_tolerance) {
      fail("non-uniform timestep");
    }
  }
  if (event.duration() < min_duration - dt_tolerance) fail("too short");
}

DatasetSplit split_dataset(std::span<const CarFollowingEvent> events, double ratio,
                           std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw ArgumentError("split ratio must lie in (0, 1)");
  }
  if (events.empty()) throw ArgumentError("cannot split an empty event set");

  std::vector<std::size_t> index(events.size());
  std::iota(index.begin(), index.end(), std::size_t{0});
  SplitMix64 rng(seed);
  for (std::size_t i = index.size() - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(index[i], index[j]);
  }

  const auto n_train =
      static_cast<std::size_t>(std::floor(ratio * static_cast<double>(events.size())));
  DatasetSplit split;
  split.seed = seed;
  split.train.reserve(n_train);
  split.test.reserve(events.size() - n_train);
  for (std::size_t i = 0; i < index.size(); ++i) {
    (i < n_train ? split.train : split.test).push_back(events[index[i]]);
  }
  return split;
}

std::vector<double> recorded_accelerations(const CarFollowingEvent& event) {
  std::vector<double> accel(event.steps());
  for (std::size_t k = 0; k < accel.size(); ++k) {
    accel[k] =
        (event.samples[k + 1].follow_speed - event.samples[k].follow_speed) / event.dt;
  }
  return accel;
}

namespace {

SeriesSummary summarize(std::span<const double> values) {
  SeriesSummary s;
  s.count = values.size();
  if (values.empty()) {
    s.mean = s.min = s.max = std::nan("");
    return s;
  }
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
  return s;
}

}  // namespace

StatsReport descriptive_stats(std::span<const CarFollowingEvent> events, std::size_t bins) {
  if (events.empty()) throw ArgumentError("descriptive_stats needs at least one event");

  std::vector<double> lead, follow, gap, ttc, jerk, headway;
  StatsReport report;
  report.events = events.size();
  for (const auto& event : events) {
    report.total_duration += event.duration();
    for (const auto& s : event.samples) {
      lead.push_back(s.lead_speed);
      follow.push_back(s.follow_speed);
      gap.push_back(s.gap());
      const double dv = s.rel_speed();
      if (dv != 0.0) ttc.push_back(-s.gap() / dv);
      if (s.follow_speed >= kHeadwaySpeedFloor) headway.push_back(s.gap() / s.follow_speed);
    }
    const auto accel = recorded_accelerations(event);
    for (std::size_t k = 1; k < accel.size(); ++k) {
      jerk.push_back((accel[k] - accel[k - 1]) / event.dt);
    }
  }
  report.samples = lead.size();
  report.lead_speed = summarize(lead);
  report.follow_speed = summarize(follow);
  report.gap = summarize(gap);
  report.ttc = summarize(ttc);
  report.jerk = summarize(jerk);
  report.headway = summarize(headway);

  report.histograms["lead_speed"] = make_histogram(lead, bins);
  report.histograms["follow_speed"] = make_histogram(follow, bins);
  report.histograms["gap"] = make_histogram(gap, bins);
  report.histograms["ttc"] = make_histogram(ttc, bins);
  report.histograms["jerk"] = make_histogram(jerk, bins);
  report.histograms["headway"] = make_histogram(headway, bins);
  return report;
}

LognormalFit fit_lognormal(std::span<const double> values) {
  std::vector<double> logs;
  logs.reserve(values.size());
  for (double v : values) {
    if (v > 0.0 && std::isfinite(v)) logs.push_back(std::log(v));
  }
  if (logs.size() < 2) {
    throw FitError("lognormal fit needs at least 2 positive samples, got " +
                   std::to_string(logs.size()));
  }
  const double n = static_cast<double>(logs.size());
  const double mu = std::accumulate(logs.begin(), logs.end(), 0.0) / n;
  double ss = 0.0;
  for (double l : logs) ss += (l - mu) * (l - mu);
  return {mu, std::sqrt(ss / n), logs.size()};
}

LognormalFit fit_lognormal_headway(std::span<const CarFollowingEvent> events) {
  std::vector<double> headways;
  for (const auto& event : events) {
    for (const auto& s : event.samples) {
      if (s.follow_speed >= kHeadwaySpeedFloor && s.gap() > 0.0) {
        headways.push_back(s.gap() / s.follow_speed);
      }
    }
  }
  return fit_lognormal(headways);
}

}  // namespace ecofollow
