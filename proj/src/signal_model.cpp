#include "evolse/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include <omp.h>

namespace evolse {

double wrap_frequency(double theta) {
  double r = std::fmod(theta + 1.0, 2.0);
  if (r < 0.0) r += 2.0;
  r -= 1.0;
  // fmod of a value just below an even integer can round up to the excluded endpoint
  if (r >= 1.0) r = -1.0;
  return r;
}

double wrap_distance(double a, double b) {
  const double d = std::fmod(std::abs(a - b), 2.0);
  return std::min(d, 2.0 - d);
}

double uniform_frequency(Rng& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double theta = dist(rng);
  return theta >= 1.0 ? -1.0 : theta;
}

Scenario Scenario::complete(int num_sensors, int true_order, int num_snapshots,
                            std::optional<double> snr_db, std::uint64_t seed) {
  Scenario s;
  s.num_sensors = num_sensors;
  s.true_order = true_order;
  s.num_snapshots = num_snapshots;
  s.snr_db = snr_db;
  s.observed_indices = all_indices(num_sensors);
  s.rng_seed = seed;
  return s;
}

namespace {

// Everything except the model order, which observe() takes from the ground truth.
void validate_geometry(const Scenario& s) {
  if (s.num_sensors < 1) throw std::invalid_argument("scenario: need at least one sensor");
  if (s.num_snapshots < 1) throw std::invalid_argument("scenario: need at least one snapshot");
  if (s.observed_indices.empty()) throw std::invalid_argument("scenario: observed index set is empty");
  for (std::size_t i = 0; i < s.observed_indices.size(); ++i) {
    const int idx = s.observed_indices[i];
    if (idx < 0 || idx >= s.num_sensors) throw std::invalid_argument("scenario: observed index out of range");
    if (i > 0 && idx <= s.observed_indices[i - 1])
      throw std::invalid_argument("scenario: observed indices must be strictly increasing");
  }
  if (s.snr_db && !std::isfinite(*s.snr_db)) throw std::invalid_argument("scenario: SNR must be finite");
}

}  // namespace

void Scenario::validate() const {
  if (num_sensors < 2) throw std::invalid_argument("scenario: need at least two sensors");
  if (true_order < 1 || true_order >= num_sensors)
    throw std::invalid_argument("scenario: true order must satisfy 1 <= K < M (got K=" +
                                std::to_string(true_order) + ", M=" + std::to_string(num_sensors) + ")");
  validate_geometry(*this);
}

std::vector<int> all_indices(int num_sensors) {
  std::vector<int> idx(static_cast<std::size_t>(std::max(num_sensors, 0)));
  std::iota(idx.begin(), idx.end(), 0);
  return idx;
}

CVector steering_vector(double theta, std::span<const int> observed_indices) {
  if (!in_frequency_domain(theta))
    throw std::domain_error("steering_vector: frequency " + std::to_string(theta) + " outside [-1, 1)");
  CVector a(static_cast<Eigen::Index>(observed_indices.size()));
  for (std::size_t i = 0; i < observed_indices.size(); ++i)
    a(static_cast<Eigen::Index>(i)) = std::polar(1.0, std::numbers::pi * theta * observed_indices[i]);
  return a;
}

CMatrix steering_matrix(std::span<const double> thetas, std::span<const int> observed_indices) {
  if (thetas.empty()) throw std::domain_error("steering_matrix: model order must be at least 1");
  CMatrix a(static_cast<Eigen::Index>(observed_indices.size()), static_cast<Eigen::Index>(thetas.size()));
  for (std::size_t k = 0; k < thetas.size(); ++k)
    a.col(static_cast<Eigen::Index>(k)) = steering_vector(thetas[k], observed_indices);
  return a;
}

namespace {

cplx draw_amplitude(Rng& rng) {
  // CN(1, 0.1): total complex variance 0.1, split evenly over both parts
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.05));
  const double re = gauss(rng);
  const double im = gauss(rng);
  return {1.0 + re, im};
}

}  // namespace

GroundTruth draw_amplitudes(Frequencies frequencies, int num_snapshots, Rng& rng) {
  GroundTruth truth;
  truth.frequencies = std::move(frequencies);
  const auto k = static_cast<Eigen::Index>(truth.frequencies.size());
  truth.amplitudes.resize(k, num_snapshots);
  for (Eigen::Index l = 0; l < num_snapshots; ++l)
    for (Eigen::Index i = 0; i < k; ++i) truth.amplitudes(i, l) = draw_amplitude(rng);
  return truth;
}

GroundTruth draw_ground_truth(const Scenario& scenario, Rng& rng) {
  scenario.validate();
  Frequencies freqs;
  freqs.reserve(static_cast<std::size_t>(scenario.true_order));
  while (static_cast<int>(freqs.size()) < scenario.true_order) {
    const double theta = uniform_frequency(rng);
    if (std::find(freqs.begin(), freqs.end(), theta) == freqs.end()) freqs.push_back(theta);
  }
  return draw_amplitudes(std::move(freqs), scenario.num_snapshots, rng);
}

Measurements observe(const Scenario& scenario, const GroundTruth& truth, Rng& rng) {
  validate_geometry(scenario);
  if (truth.frequencies.empty()) throw std::invalid_argument("observe: ground truth has no frequencies");
  if (truth.amplitudes.rows() != static_cast<Eigen::Index>(truth.frequencies.size()) ||
      truth.amplitudes.cols() != scenario.num_snapshots)
    throw std::invalid_argument("observe: amplitude matrix does not match frequencies and snapshots");
  const auto full = all_indices(scenario.num_sensors);
  const CMatrix clean = steering_matrix(truth.frequencies, full) * truth.amplitudes;

  CMatrix y = clean;
  if (scenario.snr_db) {
    const double signal_power = clean.squaredNorm() / static_cast<double>(clean.size());
    const double noise_var = signal_power * std::pow(10.0, -*scenario.snr_db / 10.0);
    std::normal_distribution<double> gauss(0.0, std::sqrt(noise_var / 2.0));
    for (Eigen::Index l = 0; l < y.cols(); ++l)
      for (Eigen::Index m = 0; m < y.rows(); ++m) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        y(m, l) += cplx(re, im);
      }
  }

  Measurements out;
  out.observed_indices = scenario.observed_indices;
  out.data.resize(scenario.num_observed(), y.cols());
  for (int i = 0; i < scenario.num_observed(); ++i) out.data.row(i) = y.row(scenario.observed_indices[i]);
  return out;
}

Synthesis synthesize(const Scenario& scenario, Rng& rng) {
  Synthesis s;
  s.truth = draw_ground_truth(scenario, rng);
  s.measurements = observe(scenario, s.truth, rng);
  return s;
}

int capon_grid_size(int num_observed) { return 512 * num_observed; }

namespace {

CMatrix loaded_inverse_covariance(const Measurements& meas) {
  const auto rows = meas.data.rows();
  CMatrix r = meas.data * meas.data.adjoint() / static_cast<double>(meas.snapshots());
  double loading = 1e-3 * r.trace().real() / static_cast<double>(rows);
  if (!(loading > 0.0)) loading = 1.0;
  r.diagonal().array() += loading;
  return r.llt().solve(CMatrix::Identity(rows, rows));
}

double capon_value(const CMatrix& rinv, std::span<const int> idx, double theta) {
  const CVector a = steering_vector(theta, idx);
  const double q = (a.adjoint() * rinv * a)(0, 0).real();
  return 1.0 / q;
}

CaponGrid make_grid(const Measurements& meas) {
  const int n = capon_grid_size(meas.rows());
  CaponGrid grid;
  grid.thetas.resize(static_cast<std::size_t>(n));
  grid.spectrum.assign(static_cast<std::size_t>(n), 0.0);
  for (int g = 0; g < n; ++g) grid.thetas[static_cast<std::size_t>(g)] = -1.0 + 2.0 * g / n;
  return grid;
}

}  // namespace

CaponGrid capon_spectrum_serial(const Measurements& meas) {
  const CMatrix rinv = loaded_inverse_covariance(meas);
  CaponGrid grid = make_grid(meas);
  for (std::size_t g = 0; g < grid.thetas.size(); ++g)
    grid.spectrum[g] = capon_value(rinv, meas.observed_indices, grid.thetas[g]);
  return grid;
}

CaponGrid capon_spectrum(const Measurements& meas) {
  const CMatrix rinv = loaded_inverse_covariance(meas);
  CaponGrid grid = make_grid(meas);
  const auto n = static_cast<long>(grid.thetas.size());
#pragma omp parallel for schedule(static) if (!omp_in_parallel())
  for (long g = 0; g < n; ++g)
    grid.spectrum[static_cast<std::size_t>(g)] =
        capon_value(rinv, meas.observed_indices, grid.thetas[static_cast<std::size_t>(g)]);
  return grid;
}

Frequencies capon_initial_solution(const Measurements& meas, int max_order) {
  if (meas.snapshots() < 1) throw std::invalid_argument("capon_initial_solution: no snapshots");
  if (max_order < 1) throw std::domain_error("capon_initial_solution: max order must be at least 1");
  const CaponGrid grid = capon_spectrum(meas);
  const auto& p = grid.spectrum;
  const std::size_t n = p.size();

  // the grid is periodic, so neighbours wrap around
  std::vector<std::size_t> peaks;
  for (std::size_t g = 0; g < n; ++g) {
    const double prev = p[(g + n - 1) % n];
    const double next = p[(g + 1) % n];
    if (p[g] > prev && p[g] >= next) peaks.push_back(g);
  }
  auto by_value = [&](std::size_t a, std::size_t b) { return p[a] > p[b] || (p[a] == p[b] && a < b); };
  std::sort(peaks.begin(), peaks.end(), by_value);

  const auto want = static_cast<std::size_t>(std::min<std::size_t>(static_cast<std::size_t>(max_order), n));
  std::vector<std::size_t> chosen(peaks.begin(), peaks.begin() + static_cast<long>(std::min(want, peaks.size())));
  if (chosen.size() < want) {
    std::vector<bool> taken(n, false);
    for (auto g : chosen) taken[g] = true;
    std::vector<std::size_t> rest;
    rest.reserve(n);
    for (std::size_t g = 0; g < n; ++g)
      if (!taken[g]) rest.push_back(g);
    std::partial_sort(rest.begin(), rest.begin() + static_cast<long>(want - chosen.size()), rest.end(), by_value);
    chosen.insert(chosen.end(), rest.begin(), rest.begin() + static_cast<long>(want - chosen.size()));
  }

  Frequencies out;
  out.reserve(chosen.size());
  for (auto g : chosen) out.push_back(grid.thetas[g]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace evolse
