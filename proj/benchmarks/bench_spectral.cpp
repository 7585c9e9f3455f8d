#include <benchmark/benchmark.h>

#include <vector>

#include "specrank/rng.hpp"
#include "specrank/spectral.hpp"
#include "specrank/synthgen.hpp"

using namespace specrank;

namespace {

std::vector<double> signal_of(std::size_t n) {
  Random rng(n);
  std::vector<double> out(n);
  for (auto& v : out) v = rng.uniform(-1.0, 1.0);
  return out;
}

void BM_DftFast(benchmark::State& state) {
  const auto signal = signal_of(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dft(signal));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DftFast)->Arg(256)->Arg(1000)->Arg(2000)->Arg(2003)->Arg(4096);

void BM_DftDirect(benchmark::State& state) {
  const auto signal = signal_of(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dft_direct(signal));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DftDirect)->Arg(256)->Arg(1000)->Arg(2000);

void BM_ScoreTrajectory(benchmark::State& state) {
  const Trajectory traj = generate_expert({0, 0, 0}, {1, 0.5, 0.2},
                                          static_cast<int>(state.range(0)), 7);
  const SpectralConfig config{.detrend = Detrend::mean};
  for (auto _ : state) {
    benchmark::DoNotOptimize(score_trajectory(traj, config));
  }
}
BENCHMARK(BM_ScoreTrajectory)->Arg(500)->Arg(2000);

void BM_ScoreDataset(benchmark::State& state) {
  SynthConfig config = default_synth_config();
  config.n_per_label = 20;
  config.base_length = 500;
  const Dataset dataset = generate_dataset(config);
  const SpectralConfig spectral{.detrend = Detrend::mean};
  const unsigned jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(score_dataset(dataset, spectral, jobs));
  }
}
BENCHMARK(BM_ScoreDataset)->Arg(1)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
