// Parallel kernels against the serial reference on a Brusselator wave.

#include <benchmark/benchmark.h>

#include <map>

#include "turinglab/bloch.hpp"
#include "turinglab/cgl.hpp"
#include "turinglab/turing.hpp"
#include "turinglab/wave.hpp"

using namespace turinglab;

namespace {

struct Fixture {
  ModelSpec model;
  CriticalData crit;
  WaveProfile profile;
  SweepOptions sweep;
  std::vector<double> grid;
};

const Fixture& fixture(int M) {
  static std::map<int, Fixture> cache;
  auto it = cache.find(M);
  if (it == cache.end()) {
    Fixture f;
    f.model = builtin("brusselator");
    f.crit = find_turing_point(f.model);
    const CGLCoefficients cgl = cgl_coefficients(f.model, f.crit);
    WaveOptions o;
    o.M = M;
    f.profile = solve_wave(f.model, f.crit, cgl, 0.04, 0.1, o);
    f.sweep.delta = 0.5 * f.crit.spectral_gap;
    f.sweep.n_geometric = 8;
    f.sweep.n_linear = 8;
    f.sweep.n_far = 4;
    f.grid = sweep_grid(0.04, f.sweep);
    it = cache.emplace(M, std::move(f)).first;
  }
  return it->second;
}

void BM_assemble(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_bloch(f.model, f.crit, f.profile, 0.1, Convention::modified));
  }
}

void BM_assemble_reference(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        assemble_bloch_reference(f.model, f.crit, f.profile, 0.1, Convention::modified));
  }
}

void BM_sweep(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bloch_sweep(f.model, f.crit, f.profile, f.grid, f.sweep));
  }
}

void BM_sweep_reference(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bloch_sweep_reference(f.model, f.crit, f.profile, f.grid, f.sweep));
  }
}

}  // namespace

BENCHMARK(BM_assemble)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_assemble_reference)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_reference)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
