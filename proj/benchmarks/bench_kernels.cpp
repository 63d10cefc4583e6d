#include "dsflow/flow.hpp"
#include "dsflow/quermass.hpp"
#include "dsflow/symfunc.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

using namespace dsflow;

namespace {

RadialGraph axisym(int n, int m) {
  AxisymGrid g(n, m);
  std::vector<double> rho(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) rho[static_cast<std::size_t>(j)] = 1.0 + 0.1 * std::cos(2.0 * g.theta(j));
  return RadialGraph(g, std::move(rho));
}

RadialGraph latlong(int nt, int np) {
  LatLongGrid g(nt, np);
  std::vector<double> rho(static_cast<std::size_t>(g.size()));
  for (int j = 0; j < nt; ++j) {
    for (int l = 0; l < np; ++l) {
      const double t = g.theta(j), p = g.phi(l);
      rho[static_cast<std::size_t>(g.index(j, l))] = 1.0 + 0.1 * std::sin(t) * std::sin(t) * std::cos(2.0 * p);
    }
  }
  return RadialGraph(g, std::move(rho));
}

void BM_AllSigmas(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = u(rng);
  const CurvatureVector l(v);
  for (auto _ : state) benchmark::DoNotOptimize(all_sigmas(l));
}
BENCHMARK(BM_AllSigmas)->DenseRange(2, 8, 3);

void BM_SymDerivatives(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = 0.5 + 0.1 * i;
  const CurvatureVector l(v);
  for (auto _ : state) benchmark::DoNotOptimize(sym_derivatives(l, 2));
}
BENCHMARK(BM_SymDerivatives)->DenseRange(2, 8, 3);

void BM_SphereJetAxisym(benchmark::State& state) {
  const RadialGraph M = axisym(3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sphere_jet(M.rho(), M.grid()));
  state.SetItemsProcessed(state.iterations() * M.size());
}
BENCHMARK(BM_SphereJetAxisym)->Arg(201)->Arg(801);

void BM_SphereJetLatlong(benchmark::State& state) {
  const RadialGraph M = latlong(64, 128);
  for (auto _ : state) benchmark::DoNotOptimize(sphere_jet(M.rho(), M.grid()));
  state.SetItemsProcessed(state.iterations() * M.size());
}
BENCHMARK(BM_SphereJetLatlong);

void BM_SpeedFieldAxisym(benchmark::State& state) {
  const RadialGraph M = axisym(static_cast<int>(state.range(0)), 401);
  for (auto _ : state) benchmark::DoNotOptimize(speed_field(M, 2));
  state.SetItemsProcessed(state.iterations() * M.size());
}
BENCHMARK(BM_SpeedFieldAxisym)->Arg(2)->Arg(3)->Arg(6);

void BM_SpeedFieldLatlong(benchmark::State& state) {
  const RadialGraph M = latlong(64, 128);
  for (auto _ : state) benchmark::DoNotOptimize(speed_field(M, 2));
  state.SetItemsProcessed(state.iterations() * M.size());
}
BENCHMARK(BM_SpeedFieldLatlong);

void BM_Step(benchmark::State& state) {
  const Scheme scheme = state.range(0) == 0 ? Scheme::euler : Scheme::rk4;
  FlowState s = initial_state(axisym(3, 401));
  s.speed = speed_field(s.M, 2);
  const double dt = choose_dt(s, 2, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(step(s, dt, scheme, 2));
}
BENCHMARK(BM_Step)->Arg(0)->Arg(1);

void BM_QuermassAll(benchmark::State& state) {
  const RadialGraph M = axisym(3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(quermass_all(M));
}
BENCHMARK(BM_QuermassAll)->Arg(401);

}  // namespace

BENCHMARK_MAIN();
