#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "test_support.hpp"

namespace ef = ecofollow;
namespace fs = std::filesystem;
using ef::testing::fixture;
using nlohmann::json;

namespace {

int run(std::vector<std::string> args) { return ef::cli::run(args); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

}  // namespace

TEST(Cli, NoSubcommandIsUsageError) {
  EXPECT_EQ(run({}), ef::cli::kUsage);
  EXPECT_EQ(run({"bogus"}), ef::cli::kUsage);
  EXPECT_EQ(run({"--help"}), ef::cli::kOk);
}

TEST(CliPrepare, WritesEventsSummaryAndManifest) {
  ef::testing::TempDir dir("prep");
  const auto out = dir / "out";
  ASSERT_EQ(run({"prepare", "--input", fixture("raw_feet.csv").string(), "--mapping",
                 fixture("mapping_feet.json").string(), "--out", out.string()}),
            ef::cli::kOk);
  const auto summary = read_json(out / "extraction_summary.json");
  EXPECT_EQ(summary["events_found"], 4);
  EXPECT_EQ(summary["events_rejected"], 1);
  EXPECT_EQ(ef::load_events(out / "events.csv").size(), 4u);
  const auto manifest = read_json(out / "manifest.json");
  for (const char* key : {"command", "config_hash", "seed", "inputs", "tool_version", "timestamp"}) {
    EXPECT_TRUE(manifest.contains(key)) << key;
  }
}

TEST(CliPrepare, AllTooShortIsEmptyResult) {
  ef::testing::TempDir dir("prep-short");
  EXPECT_EQ(run({"prepare", "--input", fixture("raw_feet.csv").string(), "--mapping",
                 fixture("mapping_feet.json").string(), "--min-duration", "100", "--out",
                 (dir / "o").string()}),
            ef::cli::kEmpty);
}

TEST(CliPrepare, BadMappingIsSchemaError) {
  ef::testing::TempDir dir("prep-bad");
  EXPECT_EQ(run({"prepare", "--input", fixture("raw_feet.csv").string(), "--mapping",
                 fixture("mapping_bad.json").string(), "--out", (dir / "o").string()}),
            ef::cli::kInput);
}

TEST(CliStats, WritesReportAndHistograms) {
  ef::testing::TempDir dir("stats");
  ASSERT_EQ(run({"stats", "--events", fixture("events_small.csv").string(), "--bins", "20",
                 "--out", dir.path().string()}),
            ef::cli::kOk);
  const auto stats = read_json(dir / "stats.json");
  EXPECT_EQ(stats["events"], 4);
  EXPECT_TRUE(stats["headway_lognormal"].contains("mu"));
  const auto hist = slurp(dir / "hist_gap.csv");
  EXPECT_EQ(hist.substr(0, hist.find('\n')), "bin_left,bin_right,count");
  EXPECT_EQ(std::count(hist.begin(), hist.end(), '\n'), 21);
}

TEST(CliTrain, TinyRunAndDeterminism) {
  ef::testing::TempDir dir("train");
  {
    std::ofstream cfg(dir / "cfg.json");
    cfg << R"({"train": {"episodes": 5, "hidden": [8, 8], "warmup_steps": 20, "batch_size": 8}})";
  }
  const std::vector<std::string> base{"train", "--events", fixture("events_small.csv").string(),
                                      "--split", "0.5", "--seed", "3", "--config",
                                      (dir / "cfg.json").string(), "--out"};
  auto a = base, b = base;
  a.push_back((dir / "a").string());
  b.push_back((dir / "b").string());
  ASSERT_EQ(run(a), ef::cli::kOk);
  ASSERT_EQ(run(b), ef::cli::kOk);
  const auto log = slurp(dir / "a" / "train_log.csv");
  EXPECT_EQ(std::count(log.begin(), log.end(), '\n'), 6);
  EXPECT_EQ(log, slurp(dir / "b" / "train_log.csv"));
  EXPECT_EQ(slurp(dir / "a" / "policy.json"), slurp(dir / "b" / "policy.json"));
  // Defaults for absent fields are echoed.
  const auto manifest = read_json(dir / "a" / "manifest.json");
  EXPECT_EQ(manifest["config_echo"]["train"]["gamma"], 0.99);
  EXPECT_EQ(manifest["config_echo"]["train"]["episodes"], 5);
  EXPECT_EQ(manifest["config_hash"], read_json(dir / "b" / "manifest.json")["config_hash"]);
}

TEST(CliTrain, BadConfigIsInputError) {
  ef::testing::TempDir dir("train-bad");
  {
    std::ofstream cfg(dir / "cfg.json");
    cfg << R"({"train": {"episdoes": 5}})";
  }
  EXPECT_EQ(run({"train", "--events", fixture("events_small.csv").string(), "--config",
                 (dir / "cfg.json").string(), "--out", (dir / "o").string()}),
            ef::cli::kInput);
}

TEST(CliEval, NoControllersIsUsageError) {
  ef::testing::TempDir dir("eval-none");
  EXPECT_EQ(run({"eval", "--events", fixture("events_small.csv").string(), "--out",
                 dir.path().string()}),
            ef::cli::kUsage);
}

TEST(CliEval, UnreadablePolicyIsInputError) {
  ef::testing::TempDir dir("eval-policy");
  {
    std::ofstream bad(dir / "p.json");
    bad << "{\"format\": \"ecofollow-policy\", \"vers";
  }
  EXPECT_EQ(run({"eval", "--events", fixture("events_small.csv").string(), "--policy",
                 (dir / "p.json").string(), "--out", (dir / "o").string()}),
            ef::cli::kInput);
}

TEST(CliCompare, GroundTruthOnlyMatchesRawData) {
  ef::testing::TempDir dir("cmp-gt");
  ASSERT_EQ(run({"compare", "--events", fixture("events_small.csv").string(), "--ground-truth",
                 "--all-events", "--out", dir.path().string()}),
            ef::cli::kOk);
  const auto report = read_json(dir / "report.json");
  ASSERT_EQ(report["controllers"].size(), 1u);
  EXPECT_EQ(report["baseline"], "ground_truth");

  const auto events = ef::load_events(fixture("events_small.csv"));
  double headway = 0;
  std::size_t n = 0;
  for (const auto& e : events) {
    for (std::size_t k = 0; k + 1 < e.samples.size(); ++k) {
      headway += e.samples[k].gap() / e.samples[k].follow_speed;
      ++n;
    }
  }
  const auto summary = read_json(dir / "summary_ground_truth.json");
  EXPECT_NEAR(summary["indicators"]["time_headway"].get<double>(), headway / static_cast<double>(n), 1e-9);
}

TEST(CliCompare, ThreeControllersInTableOrder) {
  ef::testing::TempDir dir("cmp3");
  {
    std::ofstream cfg(dir / "cfg.json");
    cfg << R"({"train": {"episodes": 2, "hidden": [8, 8], "warmup_steps": 20, "batch_size": 8}})";
  }
  ASSERT_EQ(run({"train", "--events", fixture("events_small.csv").string(), "--config",
                 (dir / "cfg.json").string(), "--out", (dir / "t").string()}),
            ef::cli::kOk);
  ASSERT_EQ(run({"compare", "--events", fixture("events_small.csv").string(), "--ground-truth",
                 "--idm", "--policy", (dir / "t" / "policy.json").string(), "--all-events",
                 "--out", (dir / "c").string()}),
            ef::cli::kOk);
  const auto report = read_json(dir / "c" / "report.json");
  ASSERT_EQ(report["controllers"].size(), 3u);
  const auto text = slurp(dir / "c" / "report.txt");
  EXPECT_NE(text.find("ecofollower"), std::string::npos);
  EXPECT_NE(text.find("idm"), std::string::npos);
  for (const char* name : {"ground_truth", "ecofollower", "idm"}) {
    for (const char* ind : {"ttc", "jerk", "headway", "fuel_rate"}) {
      EXPECT_TRUE(fs::exists(dir / "c" / (std::string("dist_") + name + "_" + ind + ".csv")));
    }
    EXPECT_TRUE(fs::exists(dir / "c" / (std::string("summary_") + name + ".json")));
  }
  EXPECT_TRUE(fs::exists(dir / "c" / "traces" / "idm"));
}

TEST(CliCompare, NeedsGroundTruth) {
  ef::testing::TempDir dir("cmp-nogt");
  EXPECT_EQ(run({"compare", "--events", fixture("events_small.csv").string(), "--idm", "--out",
                 dir.path().string()}),
            ef::cli::kUsage);
}

TEST(CliCompare, RerunIsIdempotentExceptTimestamp) {
  ef::testing::TempDir dir("idem");
  const std::vector<std::string> args{"compare", "--events", fixture("events_small.csv").string(),
                                      "--ground-truth", "--idm", "--all-events", "--out",
                                      dir.path().string()};
  ASSERT_EQ(run(args), ef::cli::kOk);
  const auto first = slurp(dir / "report.json");
  const auto dist = slurp(dir / "dist_idm_jerk.csv");
  auto manifest = read_json(dir / "manifest.json");
  ASSERT_EQ(run(args), ef::cli::kOk);
  EXPECT_EQ(slurp(dir / "report.json"), first);
  EXPECT_EQ(slurp(dir / "dist_idm_jerk.csv"), dist);
  auto again = read_json(dir / "manifest.json");
  manifest.erase("timestamp");
  again.erase("timestamp");
  EXPECT_EQ(manifest, again);
}

TEST(CliSynth, WritesLoadableEvents) {
  ef::testing::TempDir dir("synth");
  ASSERT_EQ(run({"synth", "--out", (dir / "s.csv").string(), "--events", "3", "--duration", "15"}),
            ef::cli::kOk);
  EXPECT_EQ(ef::load_events(dir / "s.csv").size(), 3u);
}

TEST(CliCalibrate, RecoversGeneratorIdmAndFeedsCompare) {
  ef::testing::TempDir dir("calib");
  {
    std::ofstream space(dir / "space.json");
    space << R"({"a_max": [0.5, 1.0], "T_headway": [1.2, 2.0], "s_jam": [2.0, 3.0]})";
  }
  ASSERT_EQ(run({"calibrate-idm", "--events", fixture("events_small.csv").string(), "--space",
                 (dir / "space.json").string(), "--out", (dir / "c").string()}),
            ef::cli::kOk);
  const auto params = read_json(dir / "c" / "idm_params.json");
  EXPECT_EQ(params["a_max"], 1.0);
  EXPECT_EQ(params["T_headway"], 1.2);
  EXPECT_EQ(params["s_jam"], 2.0);
  // Axes absent from the space file keep the default grid: 2*4*1*2*2*3.
  EXPECT_EQ(read_json(dir / "c" / "calibration.json")["candidates"], 96);
  EXPECT_TRUE(fs::exists(dir / "c" / "manifest.json"));
  EXPECT_EQ(run({"compare", "--events", fixture("events_small.csv").string(), "--ground-truth",
                 "--idm-params", (dir / "c" / "idm_params.json").string(), "--no-traces",
                 "--out", (dir / "cmp").string()}),
            ef::cli::kOk);
}

TEST(CliCalibrate, UnknownSearchKeyIsInputError) {
  ef::testing::TempDir dir("calib-bad");
  {
    std::ofstream space(dir / "space.json");
    space << R"({"a_maxx": [1.0]})";
  }
  EXPECT_EQ(run({"calibrate-idm", "--events", fixture("events_small.csv").string(), "--space",
                 (dir / "space.json").string(), "--out", (dir / "c").string()}),
            ef::cli::kInput);
}
