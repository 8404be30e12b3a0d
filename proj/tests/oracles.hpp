#pragma once

// Brute-force reference computations used only by the tests. None of these
// call into the code paths they are used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "evolse/amplitude_solver.hpp"

namespace oracle {

inline bool dominates(const evolse::Fitness& a, const evolse::Fitness& b) {
  return (a.order <= b.order && a.residual <= b.residual) && (a.order < b.order || a.residual < b.residual);
}

/// Front rank by repeated peeling with an O(n^2) scan per layer.
inline std::vector<int> peel_ranks(const std::vector<evolse::Fitness>& pts) {
  std::vector<int> rank(pts.size(), -1);
  std::size_t assigned = 0;
  for (int layer = 0; assigned < pts.size(); ++layer) {
    std::vector<std::size_t> this_layer;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (rank[i] != -1) continue;
      bool beaten = false;
      for (std::size_t j = 0; j < pts.size() && !beaten; ++j)
        beaten = j != i && rank[j] == -1 && dominates(pts[j], pts[i]);
      if (!beaten) this_layer.push_back(i);
    }
    for (auto i : this_layer) rank[i] = layer;
    assigned += this_layer.size();
  }
  return rank;
}

inline double wrap_dist(double a, double b) {
  const double d = std::fmod(std::abs(a - b), 2.0);
  return std::min(d, 2.0 - d);
}

/// Minimum summed wrap distance over all injective maps truth -> estimates.
inline double brute_force_assignment_cost(const std::vector<double>& est, const std::vector<double>& truth) {
  std::vector<std::size_t> perm(est.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  // enumerate permutations of the estimates; the first |truth| slots are the map
  do {
    double c = 0.0;
    for (std::size_t k = 0; k < truth.size(); ++k) c += wrap_dist(est[perm[k]], truth[k]);
    best = std::min(best, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Complete-array measurements with i.i.d. complex normal entries.
inline evolse::Measurements random_measurements(int m, int l, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  evolse::Measurements meas;
  for (int i = 0; i < m; ++i) meas.observed_indices.push_back(i);
  meas.data.resize(m, l);
  for (Eigen::Index i = 0; i < meas.data.size(); ++i) meas.data(i) = {n(rng), n(rng)};
  return meas;
}

inline Eigen::MatrixXcd steering(const std::vector<double>& thetas, const std::vector<int>& idx) {
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(thetas.size()));
  for (std::size_t m = 0; m < idx.size(); ++m)
    for (std::size_t k = 0; k < thetas.size(); ++k)
      a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)) =
          std::exp(std::complex<double>(0.0, std::numbers::pi * thetas[k] * idx[m]));
  return a;
}

/// Residual of the plain Hermitian normal equations S = (A^H A)^{-1} A^H Y.
inline double normal_equations_residual(const std::vector<double>& thetas, const Eigen::MatrixXcd& y,
                                        const std::vector<int>& idx) {
  const Eigen::MatrixXcd a = steering(thetas, idx);
  const Eigen::MatrixXcd gram = a.adjoint() * a;
  const Eigen::MatrixXcd s = gram.inverse() * (a.adjoint() * y);
  return (y - a * s).squaredNorm();
}

}  // namespace oracle
