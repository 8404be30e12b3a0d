#include "evolse/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <omp.h>

namespace evolse {

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Snr: return "snr";
    case SweepAxis::Order: return "k";
    case SweepAxis::Separation: return "separation";
    case SweepAxis::ObservedSensors: return "msel";
  }
  return "snr";
}

SweepAxis parse_sweep_axis(std::string_view s) {
  if (s == "snr" || s == "snr_db") return SweepAxis::Snr;
  if (s == "k" || s == "K" || s == "order") return SweepAxis::Order;
  if (s == "separation") return SweepAxis::Separation;
  if (s == "msel" || s == "m_sel" || s == "M_sel") return SweepAxis::ObservedSensors;
  throw std::invalid_argument("unknown sweep axis '" + std::string(s) + "' (expected snr, k, separation or msel)");
}

void SweepConfig::validate() const {
  if (values.empty()) throw std::invalid_argument("sweep: value list is empty");
  if (trials < 1) throw std::invalid_argument("sweep: need at least one trial per point");
  if (workers < 1) throw std::invalid_argument("sweep: worker count must be positive");
  engine.validate();
  for (double v : values) {
    switch (axis) {
      case SweepAxis::Snr:
        if (std::isnan(v) || v == -INFINITY) throw std::invalid_argument("sweep: invalid SNR value");
        break;
      case SweepAxis::Order:
        if (v != std::floor(v) || v < 1 || v >= num_sensors)
          throw std::invalid_argument("sweep: K values must be integers in [1, M - 1]");
        break;
      case SweepAxis::Separation:
        if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument("sweep: separations must lie in (0, 1)");
        break;
      case SweepAxis::ObservedSensors:
        if (v != std::floor(v) || v < 2 || v > num_sensors)
          throw std::invalid_argument("sweep: M_sel values must be integers in [2, M]");
        break;
    }
  }
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(base) ^ a) ^ (b * 0xd1342543de82ef95ULL));
}

TrialSeeds trial_seeds(std::uint64_t base_seed, int trial_index, int sweep_index) {
  const auto t = static_cast<std::uint64_t>(trial_index);
  return {derive_seed(base_seed, t, 0), derive_seed(base_seed, t, static_cast<std::uint64_t>(sweep_index) + 1)};
}

namespace {

std::vector<int> random_subset(int num_sensors, int count, Rng& rng) {
  const auto all = all_indices(num_sensors);
  std::vector<int> subset;
  subset.reserve(static_cast<std::size_t>(count));
  std::sample(all.begin(), all.end(), std::back_inserter(subset), count, rng);
  return subset;
}

}  // namespace

TrialRecord run_trial(const TrialSpec& spec) {
  TrialRecord rec;
  const auto start = std::chrono::steady_clock::now();
  try {
    Rng data_rng(spec.seeds.data);
    Scenario scenario = spec.scenario;
    if (spec.observed_sensors > 0 && spec.observed_sensors < scenario.num_sensors) {
      Rng subset_rng(derive_seed(spec.seeds.data, 0x5e1ec7));
      scenario.observed_indices = random_subset(scenario.num_sensors, spec.observed_sensors, subset_rng);
    }

    GroundTruth truth;
    if (spec.separation) {
      scenario.true_order = 2;
      const double theta0 = uniform_frequency(data_rng);
      truth = draw_amplitudes({theta0, wrap_frequency(theta0 + *spec.separation)}, scenario.num_snapshots, data_rng);
    } else {
      truth = draw_ground_truth(scenario, data_rng);
    }
    const Measurements meas = observe(scenario, truth, data_rng);

    Rng engine_rng(spec.seeds.engine);
    const SearchResult result = run_search(meas, spec.engine, engine_rng);

    rec.truth = truth.frequencies;
    std::sort(rec.truth.begin(), rec.truth.end());
    rec.estimate = result.knee.frequencies;
    rec.error_norm = frequency_error_norm(rec.estimate, rec.truth);
    rec.generations = result.generations;
    rec.evaluations = result.evaluations;
  } catch (const std::exception& e) {
    rec.failed = true;
    rec.failure = e.what();
  }
  rec.seed = spec.seeds.engine;
  if (spec.record_timing) {
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  } else {
    rec.wall_seconds = std::nan("");
  }
  return rec;
}

TrialRecord run_trial(const Scenario& scenario, const EngineConfig& engine, std::uint64_t seed) {
  TrialSpec spec;
  spec.scenario = scenario;
  spec.seeds = {derive_seed(seed, 0), derive_seed(seed, 1)};
  spec.engine = engine;
  spec.record_timing = true;
  return run_trial(spec);
}

TrialSpec make_trial_spec(const SweepConfig& config, int sweep_index, int trial_index) {
  const double value = config.values.at(static_cast<std::size_t>(sweep_index));
  TrialSpec spec;
  spec.scenario = Scenario::complete(config.num_sensors, config.true_order, config.snapshots, config.snr_db);
  spec.observed_sensors = config.observed_sensors;
  switch (config.axis) {
    case SweepAxis::Snr:
      spec.scenario.snr_db = std::isinf(value) ? std::nullopt : std::optional<double>(value);
      break;
    case SweepAxis::Order:
      spec.scenario.true_order = static_cast<int>(value);
      break;
    case SweepAxis::Separation:
      spec.scenario.true_order = 2;
      spec.separation = value;
      break;
    case SweepAxis::ObservedSensors:
      spec.observed_sensors = static_cast<int>(value);
      break;
  }
  spec.seeds = trial_seeds(config.seed, trial_index, sweep_index);
  spec.scenario.rng_seed = spec.seeds.data;
  spec.engine = config.engine;
  spec.record_timing = config.record_timing;
  return spec;
}

namespace {

SweepResult empty_result(const SweepConfig& config) {
  SweepResult result;
  result.axis = config.axis;
  for (double v : config.values) {
    SweepPoint point;
    point.value = v;
    point.trials.resize(static_cast<std::size_t>(config.trials));
    result.points.push_back(std::move(point));
  }
  return result;
}

TrialRecord run_job(const SweepConfig& config, int sweep_index, int trial_index) {
  TrialRecord rec = run_trial(make_trial_spec(config, sweep_index, trial_index));
  rec.sweep_value = config.values[static_cast<std::size_t>(sweep_index)];
  rec.trial = trial_index;
  return rec;
}

}  // namespace

SweepResult run_sweep_serial(const SweepConfig& config) {
  config.validate();
  SweepResult result = empty_result(config);
  for (int s = 0; s < static_cast<int>(config.values.size()); ++s)
    for (int t = 0; t < config.trials; ++t)
      result.points[static_cast<std::size_t>(s)].trials[static_cast<std::size_t>(t)] = run_job(config, s, t);
  return result;
}

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  SweepResult result = empty_result(config);
  const long jobs = static_cast<long>(config.values.size()) * config.trials;
  // each job writes only its own slot, so the output order is fixed
#pragma omp parallel for schedule(dynamic, 1) num_threads(config.workers)
  for (long j = 0; j < jobs; ++j) {
    const int s = static_cast<int>(j / config.trials);
    const int t = static_cast<int>(j % config.trials);
    result.points[static_cast<std::size_t>(s)].trials[static_cast<std::size_t>(t)] = run_job(config, s, t);
  }
  return result;
}

SweepResult run_separation_sweep(SweepConfig config) {
  config.axis = SweepAxis::Separation;
  config.true_order = 2;
  return run_sweep(config);
}

SweepRow aggregate(const SweepPoint& point) {
  SweepRow row;
  row.value = point.value;
  row.rmse = assignment_rmse(point.trials);
  row.success_rate = success_rate(point.trials);
  double gens = 0.0, evals = 0.0, wall = 0.0;
  bool timed = true;
  for (const auto& t : point.trials) {
    gens += t.generations;
    evals += t.evaluations;
    wall += t.wall_seconds;
    timed = timed && std::isfinite(t.wall_seconds);
    if (!t.failed && t.error_norm) ++row.trials_in_rmse;
  }
  const auto n = static_cast<double>(point.trials.size());
  row.mean_generations = gens / n;
  row.mean_evaluations = evals / n;
  if (timed) row.mean_wall_seconds = wall / n;
  return row;
}

namespace {

std::string num(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string num(const std::optional<double>& v, int digits) { return v ? num(*v, digits) : "nan"; }

std::string join_frequencies(const Frequencies& f) {
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += ';';
    out += num(f[i], 12);
  }
  return out;
}

std::string sanitize(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char c) { return c == ',' || c == '\n' || c == '\r' || c == '"'; }, ' ');
  return s;
}

}  // namespace

std::string format_aggregate_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "sweep_value,rmse,success_rate,mean_generations,mean_evaluations,mean_wall_seconds,trials_included_in_rmse\n";
  for (const auto& point : result.points) {
    const SweepRow row = aggregate(point);
    out << num(row.value, 12) << ',' << num(row.rmse, 17) << ',' << num(row.success_rate, 17) << ','
        << num(row.mean_generations, 17) << ',' << num(row.mean_evaluations, 17) << ','
        << num(row.mean_wall_seconds, 17) << ',' << row.trials_in_rmse << '\n';
  }
  return out.str();
}

std::string format_trials_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "sweep_value,trial,seed,true_order,estimated_order,success,error_norm,generations,evaluations,"
         "wall_seconds,true_frequencies,estimated_frequencies,failed,failure\n";
  for (const auto& point : result.points) {
    for (const auto& t : point.trials) {
      out << num(point.value, 12) << ',' << t.trial << ',' << t.seed << ',' << t.true_order() << ','
          << t.estimated_order() << ',' << (t.success() ? 1 : 0) << ',' << num(t.error_norm, 17) << ','
          << t.generations << ',' << t.evaluations << ',' << num(t.wall_seconds, 17) << ','
          << join_frequencies(t.truth) << ',' << join_frequencies(t.estimate) << ',' << (t.failed ? 1 : 0) << ','
          << sanitize(t.failure) << '\n';
    }
  }
  return out.str();
}

std::filesystem::path trials_path_for(const std::filesystem::path& aggregate_path) {
  std::filesystem::path p = aggregate_path;
  const std::string ext = p.has_extension() ? p.extension().string() : std::string(".csv");
  p.replace_filename(p.stem().string() + "_trials" + ext);
  return p;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  f << content;
  f.flush();
  if (!f) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
  if (result.points.empty()) throw std::invalid_argument("emit_csv: no sweep points");
  write_file(path, format_aggregate_csv(result));
  write_file(trials_path_for(path), format_trials_csv(result));
}

}  // namespace evolse
