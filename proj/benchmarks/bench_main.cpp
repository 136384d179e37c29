#include <benchmark/benchmark.h>

#include "ecofollow/ddpg.hpp"
#include "ecofollow/env.hpp"
#include "ecofollow/idm.hpp"
#include "ecofollow/rng.hpp"
#include "ecofollow/synthetic.hpp"
#include "ecofollow/vt_micro.hpp"

namespace ef = ecofollow;

static void BM_MoeExponent(benchmark::State& state) {
  ef::VtMicroCoefficients c;
  ef::SplitMix64 rng(1);
  for (auto& row : c.k) {
    for (auto& k : row) k = rng.uniform(-1e-3, 1e-3);
  }
  double v = 10.0, a = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ef::moe_exponent(c, v, a));
    v += 1e-9;
  }
}
BENCHMARK(BM_MoeExponent);

static void BM_IdmAccel(benchmark::State& state) {
  const ef::IdmParams p;
  double s = 20.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ef::idm_accel(p, 12.0, s, 0.5));
    s += 1e-9;
  }
}
BENCHMARK(BM_IdmAccel);

static void BM_IdmRollout(benchmark::State& state) {
  ef::SyntheticOptions opt;
  opt.events = 1;
  opt.duration = 60;
  const auto event = ef::synthetic_events(opt).front();
  const ef::IdmController idm(ef::IdmParams{});
  for (auto _ : state) benchmark::DoNotOptimize(ef::rollout(event, idm));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(event.samples.size() - 1));
}
BENCHMARK(BM_IdmRollout);

static void BM_DdpgUpdate(benchmark::State& state) {
  ef::DdpgAgent agent(ef::DdpgHyperparams{}, 3);
  ef::SplitMix64 rng(4);
  std::vector<ef::Transition> ts(static_cast<std::size_t>(state.range(0)));
  for (auto& t : ts) {
    t.state = {rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(-1, 1)};
    t.next_state = {rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(-1, 1)};
    t.action = rng.uniform(-1, 1);
    t.reward = rng.uniform(-2, 0);
  }
  const auto batch = ef::Batch::from(ts);
  for (auto _ : state) benchmark::DoNotOptimize(agent.update(batch));
}
BENCHMARK(BM_DdpgUpdate)->Arg(64)->Arg(256);
BENCHMARK_MAIN();
