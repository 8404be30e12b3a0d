#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "evolse/types.hpp"

namespace evolse {

/// A synthetic line-spectrum experiment.
///
/// `snr_db` empty means noiseless. `observed_indices` is the strictly increasing
/// set of sensor rows that are actually measured (all of 0..M-1 for complete data).
struct Scenario {
  int num_sensors = 15;
  int true_order = 4;
  int num_snapshots = 10;
  std::optional<double> snr_db = 10.0;
  std::vector<int> observed_indices;
  std::uint64_t rng_seed = 0;

  /// Scenario with every sensor observed.
  static Scenario complete(int num_sensors, int true_order, int num_snapshots,
                           std::optional<double> snr_db, std::uint64_t seed = 0);

  int num_observed() const { return static_cast<int>(observed_indices.size()); }

  /// Throws std::invalid_argument when the invariants do not hold.
  void validate() const;
};

struct GroundTruth {
  Frequencies frequencies;
  CMatrix amplitudes;  // K x L
};

struct Measurements {
  CMatrix data;  // M_sel x L
  std::vector<int> observed_indices;

  int rows() const { return static_cast<int>(data.rows()); }
  int snapshots() const { return static_cast<int>(data.cols()); }
  /// Largest model order a candidate may take (M_sel - 1).
  int max_order() const { return rows() - 1; }
};

struct Synthesis {
  GroundTruth truth;
  Measurements measurements;
};

std::vector<int> all_indices(int num_sensors);

CVector steering_vector(double theta, std::span<const int> observed_indices);
CMatrix steering_matrix(std::span<const double> thetas, std::span<const int> observed_indices);

/// Frequencies uniform on [-1, 1) with no separation control, amplitudes i.i.d. CN(1, 0.1).
GroundTruth draw_ground_truth(const Scenario& scenario, Rng& rng);

/// Amplitudes for prescribed frequencies, i.i.d. CN(1, 0.1).
GroundTruth draw_amplitudes(Frequencies frequencies, int num_snapshots, Rng& rng);

/// Forms Y = A S + N over all M rows, then keeps the observed rows.
///
/// Noise is always drawn for the full M x L grid so that different observed
/// subsets of one seed see the same noise realization.
Measurements observe(const Scenario& scenario, const GroundTruth& truth, Rng& rng);

Synthesis synthesize(const Scenario& scenario, Rng& rng);

// Capon (MVDR) spectrum. The OpenMP and serial variants produce identical values.
struct CaponGrid {
  std::vector<double> thetas;
  std::vector<double> spectrum;
};

int capon_grid_size(int num_observed);
CaponGrid capon_spectrum(const Measurements& measurements);
CaponGrid capon_spectrum_serial(const Measurements& measurements);

/// Highest peaks of the Capon spectrum after suppressing non-maxima, padded with
/// the best remaining grid points if there are too few peaks. Sorted ascending.
Frequencies capon_initial_solution(const Measurements& measurements, int max_order);

}  // namespace evolse
