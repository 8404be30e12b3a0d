// Serial vs OpenMP timings for the three parallel kernels.
//
//   evolse_bench [--repeats N] [--threads T]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include <CLI11.hpp>
#include <omp.h>

#include "evolse/harness.hpp"

using namespace evolse;

namespace {

double best_of(int repeats, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-22s %12.3f %12.3f %8.2fx\n", name, serial * 1e3, parallel * 1e3, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel benchmarks"};
  int repeats = 5;
  int threads = omp_get_max_threads();
  app.add_option("--repeats", repeats, "Timed repetitions per kernel (best is kept)")->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "OpenMP threads for the parallel variants")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);
  omp_set_num_threads(threads);

  Rng rng(2024);
  const auto syn = synthesize(Scenario::complete(40, 6, 50, 10.0), rng);
  const auto& meas = syn.measurements;

  std::vector<Frequencies> batch;
  for (int i = 0; i < 256; ++i) {
    Frequencies f(static_cast<std::size_t>(1 + i % meas.max_order()));
    for (auto& x : f) x = uniform_frequency(rng);
    batch.push_back(std::move(f));
  }

  SweepConfig sweep;
  sweep.num_sensors = 12;
  sweep.true_order = 3;
  sweep.snapshots = 10;
  sweep.values = {0.0, 10.0};
  sweep.trials = 8;
  sweep.workers = threads;
  sweep.engine.max_generations = 20;

  std::printf("threads: %d, repeats: %d\n", threads, repeats);
  std::printf("%-22s %12s %12s %9s\n", "kernel", "serial ms", "openmp ms", "speedup");
  report("capon spectrum (M=40)", best_of(repeats, [&] { capon_spectrum_serial(meas); }),
         best_of(repeats, [&] { capon_spectrum(meas); }));
  report("evaluate batch (256)", best_of(repeats, [&] { evaluate_batch_serial(batch, meas); }),
         best_of(repeats, [&] { evaluate_batch(batch, meas); }));
  report("sweep (2x8 trials)", best_of(repeats, [&] { run_sweep_serial(sweep); }),
         best_of(repeats, [&] { run_sweep(sweep); }));
  return 0;
}
