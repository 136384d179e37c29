#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ecofollow/histogram.hpp"

namespace ecofollow {

// Follower speeds below this are treated as standstill: headway is undefined
// there and such steps are excluded from headway statistics.
inline constexpr double kHeadwaySpeedFloor = 0.1;

// One synchronized leader/follower observation.
struct TrajectorySample {
  double time = 0.0;  // s
  double lead_position = 0.0;  // m
  double lead_speed = 0.0;  // m/s
  double follow_position = 0.0;  // m
  double follow_speed = 0.0;  // m/s

  double gap() const { return lead_position - follow_position; }
  double rel_speed() const { return lead_speed - follow_speed; }
};

// A leader/follower pair sampled at a fixed interval `dt`.
struct CarFollowingEvent {
  std::string event_id;
  double dt = 0.1;
  std::vector<TrajectorySample> samples;

  double duration() const {
    return samples.empty() ? 0.0 : static_cast<double>(samples.size() - 1) * dt;
  }
  std::size_t steps() const { return samples.empty() ? 0 : samples.size() - 1; }
};

// Maps source column names onto the six canonical fields. Scale factors are
// applied on ingestion (e.g. 0.3048 for feet -> meters).
struct ColumnMapping {
  std::string event_id = "event_id";
  std::string time = "t";
  std::string lead_position = "x_lead";
  std::string lead_speed = "v_lead";
  std::string follow_position = "x_follow";
  std::string follow_speed = "v_follow";
  double time_scale = 1.0;
  double position_scale = 1.0;
  double speed_scale = 1.0;
};

struct LoadOptions {
  double min_duration = 15.0;  // s
  // When > 0 the inferred dt of every event must equal this value.
  double expected_dt = 0.0;
  double dt_tolerance = 1e-9;
};

struct Rejection {
  std::string event_id;
  std::string reason;
};

struct LoadResult {
  std::vector<CarFollowingEvent> events;
  std::vector<Rejection> rejected;
  std::size_t rows_read = 0;
};

// Parses a trajectory CSV and groups rows into events. Events shorter than
// `min_duration` or whose gap is not strictly positive are rejected (listed in
// LoadResult::rejected); schema and timestep violations throw.
LoadResult load_events_detailed(std::istream& in, const ColumnMapping& mapping,
                                const LoadOptions& options = {});
LoadResult load_events_detailed(const std::filesystem::path& path,
                                const ColumnMapping& mapping,
                                const LoadOptions& options = {});

std::vector<CarFollowingEvent> load_events(const std::filesystem::path& path,
                                           const ColumnMapping& mapping = {},
                                           const LoadOptions& options = {});

// Writes the normalized format `event_id,t,x_lead,v_lead,x_follow,v_follow`.
// Values are written in shortest round-trip form, so re-loading is lossless.
void write_events(std::ostream& out, std::span<const CarFollowingEvent> events);
void write_events(const std::filesystem::path& path,
                  std::span<const CarFollowingEvent> events);

// Checks the CarFollowingEvent invariants; throws DataError on violation.
void validate_event(const CarFollowingEvent& event, double min_duration = 0.0,
                    double dt_tolerance = 1e-9);

struct DatasetSplit {
  std::vector<CarFollowingEvent> train;
  std::vector<CarFollowingEvent> test;
  std::uint64_t seed = 0;
};

// Seeded Fisher-Yates shuffle followed by a prefix cut of floor(ratio * n).
DatasetSplit split_dataset(std::span<const CarFollowingEvent> events, double ratio,
                           std::uint64_t seed);

struct SeriesSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct StatsReport {
  std::size_t events = 0;
  std::size_t samples = 0;
  double total_duration = 0.0;  // s
  SeriesSummary lead_speed;
  SeriesSummary follow_speed;
  SeriesSummary gap;
  SeriesSummary ttc;  // signed raw TTC over steps with non-zero rel_speed
  SeriesSummary jerk;
  SeriesSummary headway;
  // Keyed by "lead_speed", "follow_speed", "gap", "ttc", "jerk", "headway".
  std::map<std::string, Histogram> histograms;
};

// Pooled (sample-weighted) statistics over all events. Accelerations come
// from forward differences of recorded speeds; jerk from differences of those.
StatsReport descriptive_stats(std::span<const CarFollowingEvent> events,
                              std::size_t bins = 50);

struct LognormalFit {
  double mu = 0.0;
  double sigma = 0.0;
  std::size_t samples = 0;
};

// Maximum-likelihood lognormal fit over every valid per-sample time headway.
LognormalFit fit_lognormal(std::span<const double> values);
LognormalFit fit_lognormal_headway(std::span<const CarFollowingEvent> events);

// Per-sample recorded follower acceleration (v[k+1]-v[k])/dt, size steps().
std::vector<double> recorded_accelerations(const CarFollowingEvent& event);

}  // namespace ecofollow
