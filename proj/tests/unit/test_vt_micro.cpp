#include <gtest/gtest.h>

#include <cmath>

#include "ecofollow/env.hpp"
#include "ecofollow/error.hpp"
#include "ecofollow/rng.hpp"
#include "ecofollow/vt_micro.hpp"
#include "test_support.hpp"

namespace ef = ecofollow;

namespace {

double naive_exponent(const ef::VtMicroCoefficients& c, double v, double a) {
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) sum += c.k[i][j] * std::pow(v, i) * std::pow(a, j);
  }
  return sum;
}

ef::VtMicroCoefficients single(int i, int j, double value) {
  ef::VtMicroCoefficients c;
  c.k[i][j] = value;
  return c;
}

ef::SimulatedTrace trace_with_rates_unit(std::size_t rows, double dt) {
  ef::SimulatedTrace t;
  t.dt = dt;
  for (std::size_t k = 0; k < rows; ++k) {
    t.time.push_back(static_cast<double>(k) * dt);
    t.accel.push_back(0.0);
    t.follow_speed.push_back(static_cast<double>(k));
    t.spacing.push_back(10);
    t.rel_speed.push_back(0);
    t.follow_position.push_back(0);
  }
  return t;
}

}  // namespace

TEST(MoeExponent, ZeroPolynomial) {
  EXPECT_EQ(ef::moe_exponent(ef::VtMicroCoefficients{}, 13.0, -1.5), 0.0);
}

TEST(MoeExponent, ConstantTerm) {
  EXPECT_EQ(ef::moe_exponent(single(0, 0, 1.0), 10.0, 2.0), 1.0);
}

TEST(MoeExponent, MixedTerm) {
  EXPECT_DOUBLE_EQ(ef::moe_exponent(single(1, 1, 0.5), 4.0, 2.0), 4.0);
}

TEST(MoeExponent, MatchesNaiveDoubleLoop) {
  ef::SplitMix64 rng(17);
  for (int n = 0; n < 10000; ++n) {
    ef::VtMicroCoefficients c;
    for (auto& row : c.k) {
      for (auto& x : row) x = rng.uniform(-1, 1) * std::pow(10.0, rng.uniform(-6, 0));
    }
    const double v = rng.uniform(0, 40), a = rng.uniform(-4, 4);
    const double want = naive_exponent(c, v, a);
    double scale = 0.0;  // sum of |terms| bounds the cancellation error
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) scale += std::abs(c.k[i][j] * std::pow(v, i) * std::pow(a, j));
    }
    ASSERT_LE(std::abs(ef::moe_exponent(c, v, a) - want), 1e-12 * scale);
  }
}

TEST(FuelRate, ZeroTablesGiveOne) {
  EXPECT_EQ(ef::fuel_rate({}, {}, 12, 0.5).rate, 1.0);
}

TEST(FuelRate, ExpInverse) {
  EXPECT_NEAR(ef::fuel_rate(single(0, 0, std::log(2.0)), {}, 5, 1).rate, 2.0, 1e-15);
}

TEST(FuelRate, RegimeSelection) {
  const auto acc = single(0, 0, 1.0);
  const auto dec = single(0, 0, 2.0);
  EXPECT_DOUBLE_EQ(ef::fuel_rate(acc, dec, 5, 0.0).rate, std::exp(1.0));
  EXPECT_DOUBLE_EQ(ef::fuel_rate(acc, dec, 5, 0.3).rate, std::exp(1.0));
  EXPECT_DOUBLE_EQ(ef::fuel_rate(acc, dec, 5, -1e-9).rate, std::exp(2.0));
}

TEST(FuelRate, LogRoundTrip) {
  ef::SplitMix64 rng(18);
  ef::VtMicroCoefficients acc, dec;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      // Scaled so the exponent stays within a few units over the domain.
      acc.k[i][j] = rng.uniform(-0.1, 0.1) * std::pow(30.0, -(i + j));
      dec.k[i][j] = rng.uniform(-0.1, 0.1) * std::pow(30.0, -(i + j));
    }
  }
  for (int n = 0; n < 10000; ++n) {
    const double v = rng.uniform(0, 30), a = rng.uniform(-3, 3);
    const double r = ef::fuel_rate(acc, dec, v, a).rate;
    const double p = ef::moe_exponent(a >= 0 ? acc : dec, v, a);
    ASSERT_GT(r, 0.0);
    ASSERT_LE(std::abs(std::log(r) - p), 1e-12 * std::max(1.0, std::abs(p)));
  }
}

TEST(VtMicroModel, ReferenceTableIdleRate) {
  const auto model = ef::load_vt_micro(ef::testing::vt_micro_reference());
  // Independent scalar evaluation at (0, 0): only K00 survives.
  const double expected = model.units.rate_scale * std::exp(model.accel_table.k[0][0]);
  EXPECT_NEAR(model.rate(0.0, 0.0), expected, 1e-12 * expected);
  EXPECT_FALSE(model.source.empty());
}

TEST(VtMicroModel, ReferenceTableUnitsAndPlausibility) {
  const auto model = ef::load_vt_micro(ef::testing::vt_micro_reference());
  ef::SplitMix64 rng(3);
  for (int n = 0; n < 1000; ++n) {
    const double v = rng.uniform(0, 30), a = rng.uniform(-3, 3);
    const double kmh = v * model.units.speed_scale, kmhs = a * model.units.accel_scale;
    const auto& table = a >= 0 ? model.accel_table : model.decel_table;
    const double expected = model.units.rate_scale * std::exp(naive_exponent(table, kmh, kmhs));
    EXPECT_NEAR(model.rate(v, a), expected, 1e-12 * expected);
  }
  // Cruising at 15 m/s burns more than idling, and far less than 10 mL/s.
  EXPECT_GT(model.rate(15.0, 0.0), model.rate(0.0, 0.0));
  EXPECT_LT(model.rate(15.0, 0.0), 10.0);
  EXPECT_GT(model.rate(15.0, 1.0), model.rate(15.0, 0.0));
}

TEST(VtMicroModel, SingleTableOption) {
  ef::VtMicroModel m;
  m.accel_table = single(0, 0, 1.0);
  m.decel_table = single(0, 0, 2.0);
  m.single_table = true;
  EXPECT_DOUBLE_EQ(m.rate(3, -1), std::exp(1.0));
}

TEST(VtMicroModel, ParseErrors) {
  EXPECT_THROW(ef::parse_vt_micro("{"), ef::LoadError);
  EXPECT_THROW(ef::parse_vt_micro(R"({"tables":[{"regime":"acceleration","k":[[1,2,3]]}]})"),
               ef::LoadError);
  EXPECT_THROW(ef::load_vt_micro("/nonexistent/vt.json"), ef::LoadError);
}

TEST(VtMicroModel, ParseBareArray) {
  const auto m = ef::parse_vt_micro(
      R"([{"regime":"acceleration","k":[[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]},
          {"regime":"deceleration","k":[[2,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}])");
  EXPECT_DOUBLE_EQ(m.rate(1, 1), std::exp(1.0));
  EXPECT_DOUBLE_EQ(m.rate(1, -1), std::exp(2.0));
}

TEST(EventFuel, ConstantRate) {
  ef::VtMicroModel m;  // zero tables: 1 mL/s everywhere
  const auto t = trace_with_rates_unit(100, 0.1);
  const auto f = ef::event_fuel(t, m);
  EXPECT_NEAR(f.total_ml, 10.0, 1e-12);
  EXPECT_NEAR(f.mean_rate, 1.0, 1e-12);
}

TEST(EventFuel, LeftRectangleSum) {
  ef::VtMicroModel m;
  m.accel_table = single(1, 0, std::log(3.0));  // rate = 3^v
  const auto t = trace_with_rates_unit(2, 0.1);  // v = 0, 1 -> rates 1, 3
  EXPECT_NEAR(ef::event_fuel(t, m).total_ml, 0.4, 1e-12);
}

TEST(EventFuel, EmptyTraceIsError) {
  EXPECT_THROW(ef::event_fuel(ef::SimulatedTrace{}, ef::VtMicroModel{}), ef::ArgumentError);
}

TEST(EventFuel, SingleSampleEventIsError) {
  const auto e = ef::testing::constant_event("one", 1, 0.1, 8, 8, 12);
  EXPECT_THROW(ef::event_fuel(e, ef::VtMicroModel{}), ef::ArgumentError);
}
