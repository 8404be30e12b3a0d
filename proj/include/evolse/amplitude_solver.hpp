#pragma once

#include <span>
#include <vector>

#include "evolse/signal_model.hpp"
#include "evolse/types.hpp"

namespace evolse {

/// Objective vector: (model order, squared Frobenius residual). Both minimized.
struct Fitness {
  int order = 0;
  double residual = 0.0;

  friend bool operator==(const Fitness&, const Fitness&) = default;
};

/// A frequency combination, its least-squares amplitudes and its fitness.
/// Frequencies are kept sorted ascending; fitness.order == frequencies.size().
struct Candidate {
  Frequencies frequencies;
  CMatrix amplitudes;  // d x L
  Fitness fitness;

  int order() const { return fitness.order; }
  double residual() const { return fitness.residual; }
};

/// Minimum-norm least-squares amplitudes S = argmin ||Y - A(theta) S||_F.
///
/// Uses a complete orthogonal decomposition of A, which is the Hermitian
/// normal-equation solution when A has full column rank and stays defined
/// when frequencies coincide.
CMatrix recover_amplitudes(std::span<const double> thetas, const Measurements& meas);

/// ||Y - A(theta) S||_F^2
double residual_norm2(std::span<const double> thetas, const CMatrix& amplitudes, const Measurements& meas);

/// Builds a Candidate. The frequencies are sorted before fitting.
Candidate evaluate(Frequencies thetas, const Measurements& meas);

/// Model-synthesized measurements A(theta) S.
CMatrix synthesize_estimate(const Candidate& c, const Measurements& meas);

/// Batch evaluation; results are in input order. The parallel version splits the
/// batch over OpenMP threads unless already inside a parallel region.
std::vector<Candidate> evaluate_batch(std::vector<Frequencies> batch, const Measurements& meas);
std::vector<Candidate> evaluate_batch_serial(std::vector<Frequencies> batch, const Measurements& meas);

}  // namespace evolse
