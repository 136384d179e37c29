#include <gtest/gtest.h>

#include "ecofollow/config_io.hpp"
#include "ecofollow/error.hpp"
#include "ecofollow/histogram.hpp"
#include "ecofollow/idm.hpp"
#include "ecofollow/synthetic.hpp"
#include "ecofollow/rng.hpp"
#include "test_support.hpp"

namespace ef = ecofollow;
using nlohmann::json;

TEST(ConfigIo, MissingFieldsKeepDefaults) {
  const auto t = ef::config::train_from_json(json{{"episodes", 12}});
  EXPECT_EQ(t.episodes, 12);
  EXPECT_EQ(t.gamma, ef::TrainConfig{}.gamma);
  EXPECT_EQ(t.hidden, ef::TrainConfig{}.hidden);
  const auto r = ef::config::reward_from_json(json{{"weights", {{"fuel", 2.0}}}});
  EXPECT_EQ(r.weights.fuel, 2.0);
  EXPECT_EQ(r.weights.ttc, 1.0);
  EXPECT_EQ(r.headway.mu, 0.4226);
}

TEST(ConfigIo, UnknownKeyIsConfigError) {
  EXPECT_THROW(ef::config::idm_from_json(json{{"v_desird", 3}}), ef::ConfigError);
  EXPECT_THROW(ef::config::train_from_json(json{{"episodes", "many"}}), ef::ConfigError);
}

TEST(ConfigIo, RoundTrips) {
  ef::IdmParams p;
  p.beta = 3.5;
  p.T_headway = 1.7;
  EXPECT_EQ(ef::config::idm_from_json(ef::config::to_json(p)), p);

  ef::RewardConfig r;
  r.weights.jerk = 0.25;
  r.collision_penalty = -20;
  EXPECT_EQ(ef::config::to_json(ef::config::reward_from_json(ef::config::to_json(r))),
            ef::config::to_json(r));

  ef::TrainConfig t;
  t.hidden = {32};
  t.seed = 77;
  EXPECT_EQ(ef::config::to_json(ef::config::train_from_json(ef::config::to_json(t))),
            ef::config::to_json(t));

  ef::IndicatorConfig i;
  i.per_event_means = true;
  i.ttc_cap = 30;
  EXPECT_EQ(ef::config::to_json(ef::config::indicators_from_json(ef::config::to_json(i))),
            ef::config::to_json(i));

  ef::EnvConfig e;
  e.a_min = -4;
  EXPECT_EQ(ef::config::env_from_json(ef::config::to_json(e)).a_min, -4);
}

TEST(ConfigIo, IdmJsonKeys) {
  const auto j = ef::config::to_json(ef::IdmParams{});
  for (const char* key : {"a_max", "v_desired", "beta", "s_jam", "T_headway", "a_comf"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

TEST(Synthetic, EventsAreValidAndDeterministic) {
  ef::SyntheticOptions opt;
  opt.events = 6;
  opt.duration = 12;
  opt.seed = 42;
  const auto a = ef::synthetic_events(opt);
  const auto b = ef::synthetic_events(opt);
  ASSERT_EQ(a.size(), 6u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NO_THROW(ef::validate_event(a[i], 12.0));
    EXPECT_EQ(a[i].samples.size(), 121u);
    for (std::size_t k = 0; k < a[i].samples.size(); ++k) {
      EXPECT_EQ(a[i].samples[k].lead_speed, b[i].samples[k].lead_speed);
      EXPECT_EQ(a[i].samples[k].follow_position, b[i].samples[k].follow_position);
    }
  }
  EXPECT_EQ(a[0].event_id, "syn0000");
}

TEST(Synthetic, FollowerIsTheConfiguredIdm) {
  ef::SyntheticOptions opt;
  opt.events = 2;
  const auto events = ef::synthetic_events(opt);
  for (const auto& e : events) {
    const auto trace = ef::rollout(e, ef::IdmController(opt.follower));
    for (std::size_t k = 0; k < trace.size(); ++k) {
      EXPECT_NEAR(trace.spacing[k], e.samples[k].gap(), 1e-9);
    }
  }
}

TEST(Histogram, ClampsAndConserves) {
  const std::vector<double> v{-5, 0, 0.5, 0.99, 1, 7};
  const auto h = ef::make_histogram(v, ef::BinSpec{0, 1, 4});
  EXPECT_EQ(h.total(), v.size());
  EXPECT_EQ(h.counts.front(), 2u);
  EXPECT_EQ(h.counts.back(), 3u);
  EXPECT_DOUBLE_EQ(h.bin_left(1), 0.25);
  EXPECT_DOUBLE_EQ(h.bin_right(3), 1.0);
}

TEST(Rng, DerivedSeedsDiffer) {
  EXPECT_NE(ef::derive_seed(1, "split"), ef::derive_seed(1, "train"));
  EXPECT_NE(ef::derive_seed(1, "split"), ef::derive_seed(2, "split"));
  EXPECT_EQ(ef::derive_seed(1, "split"), ef::derive_seed(1, "split"));
}
