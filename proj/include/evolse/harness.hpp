#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evolse/engine.hpp"
#include "evolse/metrics.hpp"
#include "evolse/signal_model.hpp"

namespace evolse {

enum class SweepAxis { Snr, Order, Separation, ObservedSensors };

std::string_view to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(std::string_view s);

/// A one-axis Monte Carlo sweep. Fields not swept come from the base values.
struct SweepConfig {
  int num_sensors = 15;
  int true_order = 4;
  int snapshots = 10;
  std::optional<double> snr_db = 10.0;  // empty: noiseless
  int observed_sensors = 0;             // 0: all sensors
  SweepAxis axis = SweepAxis::Snr;
  std::vector<double> values;
  int trials = 50;
  std::uint64_t seed = 1;
  int workers = 1;
  bool record_timing = false;
  EngineConfig engine;

  void validate() const;
};

/// splitmix64 finalizer over the combined words.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

/// Independent RNG streams of one trial. The data stream ignores the sweep
/// index, so every point of a sweep sees the same ground truth and noise draws.
struct TrialSeeds {
  std::uint64_t data = 0;
  std::uint64_t engine = 0;
};
TrialSeeds trial_seeds(std::uint64_t base_seed, int trial_index, int sweep_index);

/// Everything needed to reproduce one trial.
struct TrialSpec {
  Scenario scenario;
  std::optional<double> separation;  // places K = 2 frequencies at theta0 and theta0 + separation
  int observed_sensors = 0;          // 0: keep scenario.observed_indices as given
  TrialSeeds seeds;
  EngineConfig engine;
  bool record_timing = false;
};

TrialRecord run_trial(const TrialSpec& spec);

/// Single-seed entry point: data and engine streams are derived from `seed`.
TrialRecord run_trial(const Scenario& scenario, const EngineConfig& engine, std::uint64_t seed);

struct SweepPoint {
  double value = 0.0;
  std::vector<TrialRecord> trials;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::Snr;
  std::vector<SweepPoint> points;
};

struct SweepRow {
  double value = 0.0;
  std::optional<double> rmse;
  double success_rate = 0.0;
  double mean_generations = 0.0;
  double mean_evaluations = 0.0;
  std::optional<double> mean_wall_seconds;
  int trials_in_rmse = 0;
};

TrialSpec make_trial_spec(const SweepConfig& config, int sweep_index, int trial_index);

/// Runs all (value, trial) pairs. The parallel version spreads trials over
/// `config.workers` OpenMP threads; both produce identical records.
SweepResult run_sweep(const SweepConfig& config);
SweepResult run_sweep_serial(const SweepConfig& config);

/// Separation sweep with K fixed at 2.
SweepResult run_separation_sweep(SweepConfig config);

SweepRow aggregate(const SweepPoint& point);

std::string format_aggregate_csv(const SweepResult& result);
std::string format_trials_csv(const SweepResult& result);

/// Companion per-trial file: <stem>_trials<ext> next to the aggregate file.
std::filesystem::path trials_path_for(const std::filesystem::path& aggregate_path);

/// Writes the aggregate table and its per-trial companion. Throws
/// std::runtime_error when a file cannot be written.
void emit_csv(const SweepResult& result, const std::filesystem::path& path);

}  // namespace evolse
