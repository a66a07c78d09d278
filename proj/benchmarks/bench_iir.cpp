#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "iir/engine.hpp"
#include "iir/monotone.hpp"
#include "iir/step_function.hpp"

namespace {

iir::SortedSample make_sample(std::size_t n) {
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> noise(0.0, 0.3);
  iir::SortedSample s;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = (i + 0.5) / static_cast<double>(n);
    s.xs.push_back(x);
    s.ys.push_back(x + 0.5 * std::sin(4.0 * 3.14159265358979 * x) +
                   noise(rng));
    s.ws.push_back(1.0);
  }
  return s;
}

void BM_pava(benchmark::State& state) {
  const auto s = make_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(iir::iso(s.ys, s.ws));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_pava)->Range(64, 1 << 16)->Complexity(benchmark::oN);

void BM_iir_step(benchmark::State& state) {
  const auto s = make_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    iir::IirModel m = iir::init(s);
    iir::iir_step(m);
    benchmark::DoNotOptimize(m.fitted);
  }
}
BENCHMARK(BM_iir_step)->Range(64, 1 << 14);

void BM_fit_k100(benchmark::State& state) {
  const auto s = make_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(iir::fit(s, iir::StopRule::none(), 100));
  }
}
BENCHMARK(BM_fit_k100)->Range(64, 4096);

void BM_step_eval(benchmark::State& state) {
  const auto s = make_sample(1024);
  iir::IirModel m = iir::init(s);
  for (int k = 0; k < 50; ++k) iir::iir_step(m);
  const iir::StepFunction f = iir::extend(s, m.fitted);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> xs(static_cast<std::size_t>(state.range(0)));
  for (auto& x : xs) x = unif(rng);
  for (auto _ : state) {
    double acc = 0.0;
    for (double x : xs) acc += f(x);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_step_eval)->Range(256, 1 << 14);

}  // namespace

BENCHMARK_MAIN();
