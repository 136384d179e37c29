#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "ecofollow/rng.hpp"
#include "ecofollow/traj_data.hpp"

namespace ecofollow::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(ECOFOLLOW_TEST_FIXTURES) / name;
}

inline std::filesystem::path vt_micro_reference() { return ECOFOLLOW_TEST_VT_MICRO; }

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    SplitMix64 rng(std::hash<std::string>{}(tag) ^
                   static_cast<std::uint64_t>(
                       std::chrono::steady_clock::now().time_since_epoch().count()));
    path_ = std::filesystem::temp_directory_path() /
            ("ecofollow-" + tag + "-" + std::to_string(rng() % 1000000000ULL));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Event with both vehicles at constant speed.
inline CarFollowingEvent constant_event(const std::string& id, std::size_t samples,
                                        double dt, double lead_speed, double follow_speed,
                                        double gap, double follow_x0 = 100.0) {
  CarFollowingEvent e;
  e.event_id = id;
  e.dt = dt;
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) * dt;
    e.samples.push_back({t, follow_x0 + gap + lead_speed * t, lead_speed,
                         follow_x0 + follow_speed * t, follow_speed});
  }
  return e;
}

// Event from per-sample speeds; positions integrated with the trapezoidal rule.
inline CarFollowingEvent speeds_event(const std::string& id, const std::vector<double>& lead,
                                      const std::vector<double>& follow, double dt,
                                      double gap0) {
  CarFollowingEvent e;
  e.event_id = id;
  e.dt = dt;
  double xl = gap0;
  double xf = 0.0;
  for (std::size_t k = 0; k < lead.size(); ++k) {
    if (k > 0) {
      xl += 0.5 * (lead[k - 1] + lead[k]) * dt;
      xf += 0.5 * (follow[k - 1] + follow[k]) * dt;
    }
    e.samples.push_back({static_cast<double>(k) * dt, xl, lead[k], xf, follow[k]});
  }
  return e;
}

inline double relative_error(double got, double want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

}  // namespace ecofollow::testing
