#include <benchmark/benchmark.h>

#include <cmath>

#include "symidx/doubling.hpp"
#include "symidx/novikov.hpp"

using namespace symidx;

namespace {

SymplecticPathSpec rotation_path(double rate, double duration) {
  return SymplecticPathSpec::single(1, M_PI * rate * Mat::Identity(2, 2), duration);
}

void bm_evaluate_path(benchmark::State& state) {
  Rng rng(1);
  const int n = static_cast<int>(state.range(0));
  SymplecticPathSpec spec;
  spec.space = SympSpace::standard(n);
  for (int k = 0; k < 3; ++k)
    spec.segments.push_back({random_symmetric(rng, 2 * n, 1.2), 0.7});
  PathEvaluator ev(spec);
  double t = 0.0;
  for (auto _ : state) {
    t = std::fmod(t + 0.37, ev.duration());
    benchmark::DoNotOptimize(ev(t));
  }
}
BENCHMARK(bm_evaluate_path)->Arg(1)->Arg(2)->Arg(3);

void bm_rotation_index(benchmark::State& state) {
  const SymplecticPathSpec spec = rotation_path(1.0, 2.0);
  const LagrangianFrame x = horizontal_frame(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(maslov_index(LagrangianPath{spec, x}, x));
}
BENCHMARK(bm_rotation_index);

void bm_index_theorem_trial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    state.PauseTiming();
    Rng rng(42 + state.iterations());
    SymplecticPathSpec spec;
    spec.space = SympSpace::standard(n);
    spec.segments.push_back({random_symmetric(rng, 2 * n, 1.5), 0.8});
    state.ResumeTiming();
    try {
      benchmark::DoNotOptimize(verify_index_theorem(HalfPathData{spec, {}}));
    } catch (const Error&) {
      // degenerate draw: still a representative unit of work
    }
  }
}
BENCHMARK(bm_index_theorem_trial)->Arg(1)->Arg(2);

void bm_golden_ring(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(novikov::verify_section33());
}
BENCHMARK(bm_golden_ring);

}  // namespace

BENCHMARK_MAIN();
