#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ecofollow/config_io.hpp"
#include "ecofollow/ddpg.hpp"
#include "ecofollow/error.hpp"
#include "ecofollow/eval_report.hpp"
#include "ecofollow/idm.hpp"
#include "ecofollow/rng.hpp"
#include "ecofollow/synthetic.hpp"
#include "ecofollow/traj_data.hpp"
#include "ecofollow/train.hpp"
#include "ecofollow/vt_micro.hpp"

namespace ecofollow::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Raised for conditions that map to a specific exit code without being a
// library error (e.g. an empty extraction result).
struct ExitRequest {
  int code;
  std::string message;
};

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string hash_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write '" + path.string() + "'");
  out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void write_manifest(const fs::path& dir, const std::string& command, std::uint64_t seed,
                    const std::vector<std::string>& inputs, const json& config_echo) {
  json manifest = {{"command", command},
                   {"config_hash", hash_hex(config_echo.dump())},
                   {"seed", seed},
                   {"inputs", inputs},
                   {"tool_version", ECOFOLLOW_VERSION},
                   {"timestamp", utc_timestamp()},
                   {"config_echo", config_echo}};
  write_json(dir / "manifest.json", manifest);
}

fs::path prepare_out_dir(const std::string& out) {
  fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ArgumentError("cannot create output directory '" + out + "'");
  return dir;
}

std::string default_vt_micro() {
  if (fs::exists(ECOFOLLOW_DEFAULT_VT_MICRO)) return ECOFOLLOW_DEFAULT_VT_MICRO;
  return ECOFOLLOW_INSTALLED_VT_MICRO;
}

std::string safe_name(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.') {
      c = '_';
    }
  }
  return out;
}

// Blocks of the --config file. Absent blocks keep their defaults.
struct RunConfig {
  TrainConfig train;
  RewardConfig reward;
  EnvConfig env;
  IdmParams idm;
  IndicatorConfig indicators;

  json echo() const {
    return {{"train", config::to_json(train)},
            {"reward", config::to_json(reward)},
            {"env", config::to_json(env)},
            {"idm", config::to_json(idm)},
            {"indicators", config::to_json(indicators)}};
  }
};

RunConfig load_run_config(const std::string& path) {
  RunConfig rc;
  if (path.empty()) return rc;
  const json j = config::read_json_file(path);
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "train") {
      rc.train = config::train_from_json(value);
    } else if (key == "reward") {
      rc.reward = config::reward_from_json(value);
    } else if (key == "env") {
      rc.env = config::env_from_json(value);
    } else if (key == "idm") {
      rc.idm = config::idm_from_json(value);
    } else if (key == "indicators") {
      rc.indicators = config::indicators_from_json(value);
    } else {
      throw ConfigError("unknown config block '" + key + "'");
    }
  }
  return rc;
}

unsigned eval_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ECOFOLLOW_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    } catch (const std::exception&) {
      throw ArgumentError("ECOFOLLOW_THREADS must be a positive integer");
    }
  }
  return n;
}

std::vector<CarFollowingEvent> read_event_file(const std::string& path) {
  LoadOptions options;
  options.min_duration = 0.0;
  auto events = load_events(path, ColumnMapping{}, options);
  if (events.empty()) throw ExitRequest{kEmpty, "no events in '" + path + "'"};
  return events;
}

// ---- prepare ---------------------------------------------------------------

struct PrepareArgs {
  std::string input;
  std::string mapping;
  double min_duration = 15.0;
  double dt = 0.1;
  std::string out;
};

int cmd_prepare(const PrepareArgs& a) {
  ColumnMapping mapping;
  if (!a.mapping.empty()) mapping = config::mapping_from_json(config::read_json_file(a.mapping));
  LoadOptions options;
  options.min_duration = a.min_duration;
  options.expected_dt = a.dt;
  const LoadResult result = load_events_detailed(fs::path(a.input), mapping, options);

  const fs::path dir = prepare_out_dir(a.out);
  json rejected = json::array();
  for (const auto& r : result.rejected) {
    rejected.push_back({{"event_id", r.event_id}, {"reason", r.reason}});
  }
  json summary = {{"rows_read", result.rows_read},
                  {"events_found", result.events.size()},
                  {"events_rejected", result.rejected.size()},
                  {"rejected", rejected}};
  write_json(dir / "extraction_summary.json", summary);
  const json echo = {{"mapping", config::to_json(mapping)},
                     {"min_duration", a.min_duration},
                     {"dt", a.dt}};
  write_manifest(dir, "prepare", 0, {a.input, a.mapping}, echo);

  std::cout << "events found: " << result.events.size()
            << ", rejected: " << result.rejected.size() << '\n';
  if (result.events.empty()) {
    throw ExitRequest{kEmpty, "no event satisfies the extraction criteria"};
  }
  write_events(dir / "events.csv", result.events);
  return kOk;
}

// ---- stats -----------------------------------------------------------------

struct StatsArgs {
  std::string events;
  std::string out;
  std::size_t bins = 50;
  double split = 0.7;
  std::uint64_t seed = 0;
  std::string fit_on = "all";
};

json series_json(const SeriesSummary& s) {
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  return {{"count", s.count}, {"mean", num(s.mean)}, {"min", num(s.min)}, {"max", num(s.max)}};
}

int cmd_stats(const StatsArgs& a) {
  const auto events = read_event_file(a.events);
  const StatsReport report = descriptive_stats(events, a.bins);
  LognormalFit fit;
  if (a.fit_on == "train") {
    const auto split = split_dataset(events, a.split, derive_seed(a.seed, "split"));
    fit = fit_lognormal_headway(split.train);
  } else {
    fit = fit_lognormal_headway(events);
  }

  const fs::path dir = prepare_out_dir(a.out);
  json j = {{"events", report.events},
            {"samples", report.samples},
            {"total_duration_s", report.total_duration},
            {"lead_speed", series_json(report.lead_speed)},
            {"follow_speed", series_json(report.follow_speed)},
            {"gap", series_json(report.gap)},
            {"ttc_signed", series_json(report.ttc)},
            {"jerk", series_json(report.jerk)},
            {"headway", series_json(report.headway)},
            {"headway_lognormal",
             {{"mu", fit.mu}, {"sigma", fit.sigma}, {"samples", fit.samples},
              {"fit_on", a.fit_on}}}};
  write_json(dir / "stats.json", j);
  for (const auto& [name, hist] : report.histograms) {
    std::ofstream out(dir / ("hist_" + name + ".csv"));
    write_histogram_csv(out, hist);
  }
  write_manifest(dir, "stats", a.seed, {a.events},
                 {{"bins", a.bins}, {"split", a.split}, {"fit_on", a.fit_on}});

  std::cout << std::fixed << std::setprecision(3) << "events " << report.events
            << "  lead speed " << report.lead_speed.mean << " m/s  follow speed "
            << report.follow_speed.mean << " m/s  gap " << report.gap.mean << " m\n"
            << "headway lognormal fit: mu " << std::setprecision(4) << fit.mu << "  sigma "
            << fit.sigma << '\n';
  return kOk;
}

// ---- train -----------------------------------------------------------------

struct TrainArgs {
  std::string events;
  double split = 0.7;
  std::uint64_t seed = 0;
  std::string config;
  std::string out;
  std::string vt_micro;
  int episodes = 0;
};

int cmd_train(const TrainArgs& a) {
  RunConfig rc = load_run_config(a.config);
  if (a.episodes > 0) rc.train.episodes = a.episodes;
  rc.train.seed = derive_seed(a.seed, "train");
  const std::string vt_path = a.vt_micro.empty() ? default_vt_micro() : a.vt_micro;
  const VtMicroModel fuel = load_vt_micro(vt_path);
  const auto events = read_event_file(a.events);
  const auto split = split_dataset(events, a.split, derive_seed(a.seed, "split"));
  if (split.train.empty()) throw ExitRequest{kEmpty, "training split is empty"};

  const fs::path dir = prepare_out_dir(a.out);
  std::cout << "training on " << split.train.size() << " events (" << split.test.size()
            << " held out), " << rc.train.episodes << " episodes\n";
  const auto progress = [&](const TrainLogRow& row) {
    if ((row.episode + 1) % 10 == 0 || row.episode + 1 == rc.train.episodes) {
      std::cout << "episode " << std::setw(5) << row.episode + 1 << "  rolling reward "
                << std::fixed << std::setprecision(4) << row.rolling_reward
                << "  collisions " << row.collisions_cum << '\n';
    }
  };
  const TrainResult result = train(split.train, rc.env, rc.reward, fuel, rc.train, progress);

  save_policy(dir / "policy.json", result.policy);
  {
    std::ofstream log(dir / "train_log.csv");
    write_train_log(log, result.log);
  }
  json echo = rc.echo();
  echo["split"] = a.split;
  echo["vt_micro"] = vt_path;
  write_manifest(dir, "train", a.seed, {a.events, a.config}, echo);
  return kOk;
}

// ---- calibrate-idm ---------------------------------------------------------

struct CalibrateArgs {
  std::string events;
  double split = 0.7;
  std::uint64_t seed = 0;
  std::string space;
  std::size_t random_samples = 0;
  std::string config;
  std::string out;
};

IdmSearchSpace default_search_space() {
  IdmSearchSpace s;
  s.a_max = {0.5, 1.0, 1.5, 2.0};
  s.v_desired = {10.0, 15.0, 20.0, 25.0};
  s.beta = {4.0};
  s.s_jam = {1.0, 2.0, 3.0};
  s.T_headway = {0.8, 1.2, 1.6, 2.0};
  s.a_comf = {1.0, 2.0, 3.0};
  return s;
}

IdmSearchSpace search_space_from_json(const json& j, IdmSearchSpace s) {
  if (!j.is_object()) throw ConfigError("IDM search space must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    std::vector<double>* target = nullptr;
    if (key == "a_max") target = &s.a_max;
    else if (key == "v_desired") target = &s.v_desired;
    else if (key == "beta") target = &s.beta;
    else if (key == "s_jam") target = &s.s_jam;
    else if (key == "T_headway") target = &s.T_headway;
    else if (key == "a_comf") target = &s.a_comf;
    else throw ConfigError("unknown key '" + key + "' in IDM search space");
    if (!value.is_array() || value.empty()) {
      throw ConfigError("IDM search space '" + key + "' must be a non-empty array");
    }
    target->clear();
    for (const auto& v : value) {
      if (!v.is_number()) throw ConfigError("IDM search space '" + key + "' must hold numbers");
      target->push_back(v.get<double>());
    }
  }
  return s;
}

json search_space_json(const IdmSearchSpace& s) {
  return {{"a_max", s.a_max},       {"v_desired", s.v_desired},
          {"beta", s.beta},         {"s_jam", s.s_jam},
          {"T_headway", s.T_headway}, {"a_comf", s.a_comf},
          {"random_samples", s.random_samples}};
}

int cmd_calibrate(const CalibrateArgs& a) {
  const RunConfig rc = load_run_config(a.config);
  IdmSearchSpace space = default_search_space();
  if (!a.space.empty()) space = search_space_from_json(config::read_json_file(a.space), space);
  space.random_samples = a.random_samples;
  space.seed = derive_seed(a.seed, "idm-calibration");
  const auto events = read_event_file(a.events);
  const auto split = split_dataset(events, a.split, derive_seed(a.seed, "split"));
  if (split.train.empty()) throw ExitRequest{kEmpty, "training split is empty"};

  const fs::path dir = prepare_out_dir(a.out);
  const IdmCalibration cal = calibrate_idm(split.train, space, rc.env);
  write_json(dir / "idm_params.json", config::to_json(cal.params));
  write_json(dir / "calibration.json", {{"events", split.train.size()},
                                        {"candidates", cal.candidates},
                                        {"spacing_mse", cal.spacing_mse},
                                        {"colliding_events", cal.collisions},
                                        {"params", config::to_json(cal.params)}});
  std::cout << "calibrated IDM on " << split.train.size() << " events, " << cal.candidates
            << " candidates: spacing MSE " << std::setprecision(4) << cal.spacing_mse
            << " m^2, colliding events " << cal.collisions << '\n';
  json echo = rc.echo();
  echo["split"] = a.split;
  echo["search_space"] = search_space_json(space);
  write_manifest(dir, "calibrate-idm", a.seed, {a.events, a.space, a.config}, echo);
  return kOk;
}

// ---- eval / compare --------------------------------------------------------

struct EvalArgs {
  std::string events;
  std::string policy;
  std::string idm_params;
  bool idm = false;
  bool ground_truth = false;
  std::string vt_micro;
  std::string config;
  std::string out;
  double split = 0.7;
  std::uint64_t seed = 0;
  bool all_events = false;
  bool per_event_means = false;
  bool no_traces = false;
};

int cmd_eval(const EvalArgs& a, bool comparison) {
  const bool want_idm = a.idm || !a.idm_params.empty();
  if (!a.ground_truth && a.policy.empty() && !want_idm) {
    throw ExitRequest{kUsage,
                      "no controllers selected (use --ground-truth, --policy, --idm or "
                      "--idm-params)"};
  }
  if (comparison && !a.ground_truth) {
    throw ExitRequest{kUsage, "compare needs the --ground-truth baseline"};
  }

  RunConfig rc = load_run_config(a.config);
  if (!a.idm_params.empty()) rc.idm = config::idm_from_json(config::read_json_file(a.idm_params));
  if (a.per_event_means) rc.indicators.per_event_means = true;
  rc.indicators.threads = eval_threads();
  const std::string vt_path = a.vt_micro.empty() ? default_vt_micro() : a.vt_micro;
  const VtMicroModel fuel = load_vt_micro(vt_path);

  std::unique_ptr<Controller> policy;
  if (!a.policy.empty()) policy = std::make_unique<PolicyController>(load_policy(a.policy));

  const auto events = read_event_file(a.events);
  std::vector<CarFollowingEvent> test_events;
  if (a.all_events) {
    test_events = events;
  } else {
    test_events = split_dataset(events, a.split, derive_seed(a.seed, "split")).test;
  }
  if (test_events.empty()) throw ExitRequest{kEmpty, "test split is empty"};

  std::vector<EvaluationResult> results;
  if (a.ground_truth) results.push_back(evaluate_ground_truth(test_events, fuel, rc.indicators));
  if (policy) {
    results.push_back(evaluate_controller(*policy, test_events, rc.env, fuel, rc.indicators));
  }
  if (want_idm) {
    const IdmController idm(rc.idm, rc.env);
    results.push_back(evaluate_controller(idm, test_events, rc.env, fuel, rc.indicators));
  }

  const fs::path dir = prepare_out_dir(a.out);
  std::vector<IndicatorSummary> summaries;
  for (const auto& r : results) {
    const std::string name = safe_name(r.summary.name);
    json s = summary_to_json(r.summary);
    json failures = json::array();
    for (const auto& f : r.failures) {
      failures.push_back({{"event_id", f.event_id}, {"error", f.message}});
    }
    s["failures"] = failures;
    s["aggregation"] = config::to_json(rc.indicators);
    write_json(dir / ("summary_" + name + ".json"), s);

    for (const auto& [indicator, hist] :
         export_distributions(r.traces, fuel, rc.indicators)) {
      std::ofstream out(dir / ("dist_" + name + "_" + indicator + ".csv"));
      write_histogram_csv(out, hist);
    }
    if (!a.no_traces) {
      const fs::path trace_dir = dir / "traces" / name;
      fs::create_directories(trace_dir);
      for (const auto& trace : r.traces) {
        std::ofstream out(trace_dir / (safe_name(trace.event_id) + ".csv"));
        write_trace_csv(out, trace);
      }
    }
    summaries.push_back(r.summary);
    for (const auto& f : r.failures) {
      std::cerr << "warning: " << r.summary.name << " failed on event " << f.event_id << ": "
                << f.message << '\n';
    }
  }

  json echo = rc.echo();
  echo["indicators"].erase("threads");
  echo["split"] = a.all_events ? json(nullptr) : json(a.split);
  echo["vt_micro"] = vt_path;
  echo["test_events"] = test_events.size();

  if (a.ground_truth) {
    const ComparisonReport report = compare(summaries);
    const std::string table = report.render_table();
    std::cout << table;
    if (comparison) {
      write_json(dir / "report.json", report.to_json(echo));
      write_text(dir / "report.txt", table);
    }
  } else {
    for (const auto& s : summaries) std::cout << summary_to_json(s).dump() << '\n';
  }

  write_manifest(dir, comparison ? "compare" : "eval", a.seed,
                 {a.events, a.policy, a.idm_params, a.config}, echo);
  return kOk;
}

// ---- synth -----------------------------------------------------------------

struct SynthArgs {
  std::string out;
  std::size_t events = 50;
  double duration = 20.0;
  double dt = 0.1;
  std::uint64_t seed = 0;
};

int cmd_synth(const SynthArgs& a) {
  SyntheticOptions options;
  options.events = a.events;
  options.duration = a.duration;
  options.dt = a.dt;
  options.seed = a.seed;
  const auto events = synthetic_events(options);
  const fs::path path(a.out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_events(path, events);
  std::cout << "wrote " << events.size() << " synthetic events to " << a.out << '\n';
  return kOk;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"EcoFollower car-following toolkit: data preparation, DDPG training, "
               "and controller evaluation"};
  app.set_version_flag("--version", ECOFOLLOW_VERSION);
  app.require_subcommand(1);

  PrepareArgs prep;
  auto* prepare = app.add_subcommand("prepare", "Extract car-following events from a CSV");
  prepare->add_option("--input", prep.input, "Trajectory CSV")->required();
  prepare->add_option("--mapping", prep.mapping, "Column mapping JSON");
  prepare->add_option("--min-duration", prep.min_duration, "Minimum event duration (s)")
      ->capture_default_str();
  prepare->add_option("--dt", prep.dt, "Expected sampling interval (s); 0 disables the check")
      ->capture_default_str();
  prepare->add_option("--out", prep.out, "Output directory")->required();

  StatsArgs st;
  auto* stats = app.add_subcommand("stats", "Descriptive statistics and headway fit");
  stats->add_option("--events", st.events, "Normalized event CSV")->required();
  stats->add_option("--out", st.out, "Output directory")->required();
  stats->add_option("--bins", st.bins, "Histogram bins")->capture_default_str();
  stats->add_option("--split", st.split, "Train fraction (for --fit-on train)")
      ->capture_default_str();
  stats->add_option("--seed", st.seed, "Root seed")->capture_default_str();
  stats->add_option("--fit-on", st.fit_on, "Headway fit population")
      ->check(CLI::IsMember({"all", "train"}))
      ->capture_default_str();

  TrainArgs tr;
  auto* train_cmd = app.add_subcommand("train", "Train the EcoFollower DDPG policy");
  train_cmd->add_option("--events", tr.events, "Normalized event CSV")->required();
  train_cmd->add_option("--split", tr.split, "Train fraction")->capture_default_str();
  train_cmd->add_option("--seed", tr.seed, "Root seed")->capture_default_str();
  train_cmd->add_option("--config", tr.config, "Run config JSON");
  train_cmd->add_option("--episodes", tr.episodes, "Override train.episodes");
  train_cmd->add_option("--vt-micro", tr.vt_micro, "VT-Micro coefficient JSON");
  train_cmd->add_option("--out", tr.out, "Output directory")->required();

  EvalArgs ev;
  auto add_eval_options = [&](CLI::App* cmd) {
    cmd->add_option("--events", ev.events, "Normalized event CSV")->required();
    cmd->add_option("--policy", ev.policy, "Trained policy file");
    cmd->add_option("--idm-params", ev.idm_params, "IDM parameter JSON");
    cmd->add_flag("--idm", ev.idm, "Include IDM with configured/default parameters");
    cmd->add_flag("--ground-truth", ev.ground_truth, "Include the recorded follower");
    cmd->add_option("--vt-micro", ev.vt_micro, "VT-Micro coefficient JSON");
    cmd->add_option("--config", ev.config, "Run config JSON");
    cmd->add_option("--out", ev.out, "Output directory")->required();
    cmd->add_option("--split", ev.split, "Train fraction; the rest is evaluated")
        ->capture_default_str();
    cmd->add_option("--seed", ev.seed, "Root seed")->capture_default_str();
    cmd->add_flag("--all-events", ev.all_events, "Evaluate every event, not the test split");
    cmd->add_flag("--per-event-means", ev.per_event_means,
                  "Average per-event means instead of pooling steps");
    cmd->add_flag("--no-traces", ev.no_traces, "Skip per-event trace CSVs");
  };
  auto* eval = app.add_subcommand("eval", "Evaluate controllers on the test events");
  add_eval_options(eval);
  auto* comp = app.add_subcommand("compare", "Evaluate and compare against ground truth");
  add_eval_options(comp);

  CalibrateArgs ca;
  auto* calibrate =
      app.add_subcommand("calibrate-idm", "Fit IDM parameters to the recorded followers");
  calibrate->add_option("--events", ca.events, "Normalized event CSV")->required();
  calibrate->add_option("--split", ca.split, "Train fraction; only it is fitted")
      ->capture_default_str();
  calibrate->add_option("--seed", ca.seed, "Root seed")->capture_default_str();
  calibrate->add_option("--space", ca.space, "Search space JSON (per-parameter value lists)");
  calibrate->add_option("--random-samples", ca.random_samples,
                        "Draw this many uniform candidates inside the grid bounds instead of the grid")
      ->capture_default_str();
  calibrate->add_option("--config", ca.config, "Run config JSON (env block)");
  calibrate->add_option("--out", ca.out, "Output directory")->required();

  SynthArgs sy;
  auto* synth = app.add_subcommand("synth", "Write synthetic leader/IDM-follower events");
  synth->add_option("--out", sy.out, "Output event CSV")->required();
  synth->add_option("--events", sy.events, "Number of events")->capture_default_str();
  synth->add_option("--duration", sy.duration, "Event duration (s)")->capture_default_str();
  synth->add_option("--dt", sy.dt, "Sampling interval (s)")->capture_default_str();
  synth->add_option("--seed", sy.seed, "Seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*prepare) return cmd_prepare(prep);
    if (*stats) return cmd_stats(st);
    if (*train_cmd) return cmd_train(tr);
    if (*eval) return cmd_eval(ev, false);
    if (*comp) return cmd_eval(ev, true);
    if (*synth) return cmd_synth(sy);
    if (*calibrate) return cmd_calibrate(ca);
  } catch (const ExitRequest& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  } catch (const CalibrationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kEmpty;
  } catch (const TrainingError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kInput;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kInput;
  } catch (const LoadError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kInput;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kUsage;
}

int run(const std::vector<std::string>& args) {
  std::vector<std::string> storage{"ecofollow"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace ecofollow::cli
