#include <benchmark/benchmark.h>

#include <cmath>

#include "nlkg/dichotomy.hpp"
#include "nlkg/exponents.hpp"

using namespace nlkg;

namespace {

std::vector<double> gaussian(const RadialGrid& g) {
  return g.sample([](double r) { return std::exp(-r * r); });
}

void bm_radial_integrate(benchmark::State& state) {
  const RadialGrid g(3, 20.0, static_cast<std::size_t>(state.range(0)));
  const auto u = gaussian(g);
  for (auto _ : state) benchmark::DoNotOptimize(g.integrate(u));
  state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(bm_radial_integrate)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

void bm_k_parts(benchmark::State& state) {
  const RadialGrid g(3, 20.0, static_cast<std::size_t>(state.range(0)));
  const auto model = NonlinearityModel::single_power(3, 4.0);
  const auto u = gaussian(g);
  const ScalingPair sp{1.0, 0.5};
  for (auto _ : state)
    benchmark::DoNotOptimize(K_parts(g, model, u, sp).K());
}
BENCHMARK(bm_k_parts)->Arg(1 << 12)->Arg(1 << 16);

void bm_strang_step(benchmark::State& state) {
  const BoxGrid g(1, 80.0, static_cast<std::size_t>(state.range(0)));
  const auto model = NonlinearityModel::single_power(1, 8.0);
  StatePair s{g.sample_radial([](double r) { return 0.5 * std::exp(-r * r); }),
              std::vector<double>(g.total(), 0.0)};
  auto st = make_state(g, s);
  for (auto _ : state) step(st, 0.01, model);
  state.SetItemsProcessed(state.iterations() * g.total());
}
BENCHMARK(bm_strang_step)->Arg(1 << 10)->Arg(1 << 12)->Arg(1 << 14);

void bm_strang_step_3d(benchmark::State& state) {
  const BoxGrid g(3, 32.0, 64);
  const auto model = NonlinearityModel::single_power(3, 4.0);
  StatePair s{g.sample_radial([](double r) { return 0.5 * std::exp(-r * r); }),
              std::vector<double>(g.total(), 0.0)};
  auto st = make_state(g, s);
  for (auto _ : state) step(st, 0.01, model);
  state.SetItemsProcessed(state.iterations() * g.total());
}
BENCHMARK(bm_strang_step_3d);

void bm_shoot_1d(benchmark::State& state) {
  const auto model = NonlinearityModel::single_power(1, 8.0);
  for (auto _ : state) benchmark::DoNotOptimize(shoot(model, 1).m);
}
BENCHMARK(bm_shoot_1d)->Unit(benchmark::kMillisecond);

void bm_verify_relations(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const Rational p1 = range_p1(d).midpoint();
  const Rational p2 = range_p2(d).midpoint();
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_relations(d, p1, p2).pass);
}
BENCHMARK(bm_verify_relations)->Arg(3)->Arg(6)->Unit(benchmark::kMicrosecond);

void bm_appendix_scan(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        appendix_a_scan(3, ScalingPair{-1.0, 3.0}, 4.0, 4.7243).crossed);
}
BENCHMARK(bm_appendix_scan)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
