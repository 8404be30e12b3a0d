#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evolse/types.hpp"

namespace evolse {

struct Assignment {
  /// estimate_for_truth[k] is the index of the estimate matched to truth k.
  std::vector<std::size_t> estimate_for_truth;
  double cost = 0.0;
};

/// Minimum total cost assignment of rows to distinct columns (rows <= cols),
/// Hungarian method with potentials. `cost` is row-major rows x cols.
std::vector<std::size_t> hungarian(std::span<const double> cost, std::size_t rows, std::size_t cols);

/// Assigns every true frequency to a distinct estimate, minimizing the summed
/// wrap-around distance. Requires estimates.size() >= truth.size().
Assignment match_frequencies(std::span<const double> estimates, std::span<const double> truth);

/// l2 norm of the wrap-around errors of the matched estimates. Unmatched
/// (spurious) estimates do not contribute. nullopt when fewer estimates than truths.
std::optional<double> frequency_error_norm(std::span<const double> estimates, std::span<const double> truth);

/// One Monte Carlo trial.
struct TrialRecord {
  double sweep_value = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  Frequencies truth;
  Frequencies estimate;
  std::optional<double> error_norm;  // present iff estimated order >= true order
  int generations = 0;
  int evaluations = 0;
  double wall_seconds = 0.0;
  bool failed = false;
  std::string failure;

  int true_order() const { return static_cast<int>(truth.size()); }
  int estimated_order() const { return static_cast<int>(estimate.size()); }
  bool success() const { return !failed && estimated_order() == true_order(); }
};

/// sqrt of the mean of per-trial error norms over the trials whose estimated
/// order is at least the true order. nullopt when no trial qualifies.
std::optional<double> assignment_rmse(std::span<const TrialRecord> trials);

/// Fraction of trials with the true model order. Throws on an empty set.
double success_rate(std::span<const TrialRecord> trials);

}  // namespace evolse
