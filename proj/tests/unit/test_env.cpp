#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "ecofollow/env.hpp"
#include "ecofollow/error.hpp"
#include "ecofollow/rng.hpp"
#include "test_support.hpp"

namespace ef = ecofollow;
using ef::testing::constant_event;

TEST(EnvReset, ReadsFirstSample) {
  const auto e = constant_event("a", 10, 0.1, 8, 8, 12);
  ef::Env env;
  const auto s = env.reset(e);
  EXPECT_DOUBLE_EQ(s.follow_speed, 8.0);
  EXPECT_DOUBLE_EQ(s.spacing, 12.0);
  EXPECT_DOUBLE_EQ(s.rel_speed, 0.0);
}

TEST(EnvReset, RelativeSpeedIsLeadMinusFollow) {
  const auto s = ef::initial_state(constant_event("a", 10, 0.1, 10, 8, 12));
  EXPECT_DOUBLE_EQ(s.rel_speed, 2.0);
}

TEST(EnvReset, SpacingFromPositions) {
  auto e = constant_event("a", 10, 0.1, 8, 8, 12);
  e.samples[0].lead_position = 112;
  e.samples[0].follow_position = 100;
  EXPECT_DOUBLE_EQ(ef::initial_state(e).spacing, 12.0);
}

TEST(EnvStep, TrapezoidalSpacing) {
  const auto out = ef::advance({8, 10, 2}, 0.0, 10.0, 0.1);
  EXPECT_NEAR(out.next_state.spacing, 10.2, 1e-12);
  EXPECT_DOUBLE_EQ(out.next_state.rel_speed, 2.0);
  EXPECT_FALSE(out.collided);
}

TEST(EnvStep, EquilibriumUnchanged) {
  const auto out = ef::advance({8, 12, 0}, 0.0, 8.0, 0.1, {}, 50.0);
  EXPECT_DOUBLE_EQ(out.next_state.follow_speed, 8.0);
  EXPECT_DOUBLE_EQ(out.next_state.spacing, 12.0);
  EXPECT_DOUBLE_EQ(out.next_state.rel_speed, 0.0);
  EXPECT_NEAR(out.follow_position, 50.8, 1e-12);
}

TEST(EnvStep, CollisionWhenSpacingCrossesZero) {
  const auto out = ef::advance({10, 0.05, -5}, 0.0, 5.0, 0.1);
  EXPECT_TRUE(out.collided);
  EXPECT_TRUE(out.done);
}

TEST(EnvStep, CollisionGapConfigurable) {
  ef::EnvConfig cfg;
  cfg.collision_gap = 2.0;
  EXPECT_TRUE(ef::advance({8, 2.05, -1}, 0.0, 7.0, 0.1, cfg).collided);
  EXPECT_FALSE(ef::advance({8, 2.5, -1}, 0.0, 7.0, 0.1, cfg).collided);
}

TEST(EnvStep, SpeedClampedAtZero) {
  const auto out = ef::advance({0.1, 10, -0.1}, -3.0, 0.0, 0.1);
  EXPECT_EQ(out.next_state.follow_speed, 0.0);
  EXPECT_NEAR(out.next_state.spacing, 10.0 + 0.5 * (-0.1 + 0.0) * 0.1, 1e-12);
}

TEST(EnvStep, NonFiniteInputIsNumericError) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(ef::advance({8, 10, 0}, nan, 8.0, 0.1), ef::NumericError);
  EXPECT_THROW(ef::advance({8, 10, 0}, 0.0, nan, 0.1), ef::NumericError);
  EXPECT_THROW(ef::advance({nan, 10, 0}, 0.0, 8.0, 0.1), ef::NumericError);
}

TEST(EnvStep, OutOfBoundsActionRejected) {
  EXPECT_THROW(ef::advance({8, 10, 0}, 3.5, 8.0, 0.1), ef::ArgumentError);
  EXPECT_THROW(ef::advance({8, 10, 0}, 0.0, 8.0, 0.0), ef::ArgumentError);
}

TEST(EnvStep, SignConvention) {
  ef::SplitMix64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.uniform(1, 20);
    const double rel = rng.uniform(-3, 3);
    const ef::EnvState s{v, 30.0, rel};
    const auto out = ef::advance(s, 0.0, v + rel, 0.1);
    if (rel > 0) EXPECT_GE(out.next_state.spacing, s.spacing);
    if (rel < 0) EXPECT_LT(out.next_state.spacing, s.spacing);
  }
}

TEST(EnvStep, SpeedNeverNegative) {
  ef::SplitMix64 rng(6);
  ef::EnvState s{5, 1e6, 0};
  for (int i = 0; i < 5000; ++i) {
    s = ef::advance(s, rng.uniform(-3, 3), rng.uniform(0, 10), 0.1).next_state;
    ASSERT_GE(s.follow_speed, 0.0);
  }
}

TEST(Rollout, ConstantAccelerationMatchesClosedForm) {
  const double dt = 0.1, vl0 = 12, al = 0.08, vf0 = 10, af = 0.05, s0 = 25;
  std::vector<double> lead, follow;
  for (int k = 0; k <= 1000; ++k) {
    lead.push_back(vl0 + al * k * dt);
    follow.push_back(vf0 + af * k * dt);
  }
  const auto e = ef::testing::speeds_event("ca", lead, follow, dt, s0);
  const ef::ConstantAccelController ctl(af);
  const auto trace = ef::rollout(e, ctl);
  ASSERT_EQ(trace.size(), 1000u);
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const double t = static_cast<double>(k) * dt;
    const double closed = s0 + (vl0 - vf0) * t + 0.5 * (al - af) * t * t;
    ASSERT_NEAR(trace.spacing[k], closed, 1e-9) << "step " << k;
  }
  const double t = 1000 * dt;
  EXPECT_NEAR(trace.final_state.spacing, s0 + (vl0 - vf0) * t + 0.5 * (al - af) * t * t, 1e-9);
}

TEST(Rollout, ReplayMatchesRecordedSpeedsAndPositions) {
  for (const auto& e : ef::load_events(ef::testing::fixture("events_small.csv"))) {
    const auto trace = ef::rollout(e, ef::RecordedReplayController{});
    ASSERT_EQ(trace.size(), e.steps());
    EXPECT_FALSE(trace.collided);
    for (std::size_t k = 0; k < trace.size(); ++k) {
      EXPECT_NEAR(trace.follow_speed[k], e.samples[k].follow_speed, 1e-6);
      EXPECT_NEAR(trace.follow_position[k], e.samples[k].follow_position, 1e-4);
    }
    EXPECT_NEAR(trace.final_position, e.samples.back().follow_position, 1e-4);
  }
}

TEST(Rollout, SingleSampleEventGivesEmptyTrace) {
  const auto e = constant_event("one", 1, 0.1, 8, 8, 12);
  ef::Env env;
  env.reset(e);
  EXPECT_TRUE(env.done());
  const auto trace = ef::rollout(e, ef::ConstantAccelController(0.0));
  EXPECT_EQ(trace.size(), 0u);
}

TEST(Rollout, HardBrakingClampsByStepEleven) {
  const auto e = constant_event("brake", 40, 0.1, 3, 3, 50);
  const auto trace = ef::rollout(e, ef::ConstantAccelController(-3.0));
  ASSERT_EQ(trace.size(), 39u);
  for (std::size_t k = 0; k < 10; ++k) EXPECT_GT(trace.follow_speed[k], 0.0);
  for (std::size_t k = 11; k < trace.size(); ++k) EXPECT_EQ(trace.follow_speed[k], 0.0);
  EXPECT_EQ(trace.final_state.follow_speed, 0.0);
}

TEST(Rollout, ControllerOutputIsClamped) {
  const auto e = constant_event("a", 5, 0.1, 8, 8, 50);
  const auto trace = ef::rollout(e, ef::ConstantAccelController(10.0));
  for (double a : trace.accel) EXPECT_EQ(a, 3.0);
}

TEST(Rollout, StopsAtCollision) {
  const auto e = constant_event("crash", 100, 0.1, 0, 10, 3);
  const auto trace = ef::rollout(e, ef::ConstantAccelController(0.0));
  EXPECT_TRUE(trace.collided);
  EXPECT_LT(trace.size(), 99u);
  EXPECT_LE(trace.final_state.spacing, 0.0);
}

namespace {
class ThrowingController final : public ef::Controller {
 public:
  std::string name() const override { return "boom"; }
  double accel(const ef::ControlContext& c) const override {
    if (c.step == 4) throw ef::ArgumentError("bad state");
    return 0.0;
  }
};
}  // namespace

TEST(Rollout, ControllerErrorCarriesStepIndex) {
  const auto e = constant_event("a", 20, 0.1, 8, 8, 50);
  try {
    ef::rollout(e, ThrowingController{});
    FAIL();
  } catch (const ef::ArgumentError& err) {
    EXPECT_NE(std::string(err.what()).find("step 4"), std::string::npos);
  }
}

namespace {
class NanController final : public ef::Controller {
 public:
  std::string name() const override { return "nan"; }
  double accel(const ef::ControlContext&) const override {
    throw ef::NumericError("non-finite network output");
  }
};
}  // namespace

TEST(Rollout, ControllerNumericErrorKeepsItsType) {
  const auto e = constant_event("a", 20, 0.1, 8, 8, 50);
  EXPECT_THROW(ef::rollout(e, NanController{}), ef::NumericError);
}

TEST(Rollout, DeterministicForDeterministicController) {
  const auto e = ef::load_events(ef::testing::fixture("events_small.csv")).front();
  std::ostringstream a, b;
  ef::write_trace_csv(a, ef::rollout(e, ef::ConstantAccelController(0.3)));
  ef::write_trace_csv(b, ef::rollout(e, ef::ConstantAccelController(0.3)));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "t,accel,v_follow,spacing,rel_speed,x_follow");
}

TEST(RecordedTrace, MatchesEventRows) {
  const auto e = ef::load_events(ef::testing::fixture("events_small.csv")).front();
  const auto trace = ef::recorded_trace(e);
  ASSERT_EQ(trace.size(), e.steps());
  for (std::size_t k = 0; k < trace.size(); ++k) {
    EXPECT_DOUBLE_EQ(trace.spacing[k], e.samples[k].gap());
    EXPECT_DOUBLE_EQ(trace.follow_speed[k], e.samples[k].follow_speed);
  }
}
