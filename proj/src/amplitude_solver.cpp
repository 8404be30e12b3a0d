#include "evolse/amplitude_solver.hpp"

#include <algorithm>
#include <stdexcept>

#include <omp.h>

namespace evolse {

namespace {

// Relative pivot threshold below which columns are treated as dependent.
constexpr double kRankThreshold = 1e-10;

}  // namespace

CMatrix recover_amplitudes(std::span<const double> thetas, const Measurements& meas) {
  if (thetas.empty() || static_cast<int>(thetas.size()) > meas.max_order())
    throw std::domain_error("recover_amplitudes: model order must lie in [1, M_sel - 1]");
  const CMatrix a = steering_matrix(thetas, meas.observed_indices);
  Eigen::CompleteOrthogonalDecomposition<CMatrix> cod;
  cod.setThreshold(kRankThreshold);
  cod.compute(a);
  return cod.solve(meas.data);
}

double residual_norm2(std::span<const double> thetas, const CMatrix& amplitudes, const Measurements& meas) {
  const CMatrix a = steering_matrix(thetas, meas.observed_indices);
  return (meas.data - a * amplitudes).squaredNorm();
}

Candidate evaluate(Frequencies thetas, const Measurements& meas) {
  std::sort(thetas.begin(), thetas.end());
  Candidate c;
  c.amplitudes = recover_amplitudes(thetas, meas);
  c.fitness.order = static_cast<int>(thetas.size());
  c.fitness.residual = residual_norm2(thetas, c.amplitudes, meas);
  c.frequencies = std::move(thetas);
  return c;
}

CMatrix synthesize_estimate(const Candidate& c, const Measurements& meas) {
  return steering_matrix(c.frequencies, meas.observed_indices) * c.amplitudes;
}

std::vector<Candidate> evaluate_batch_serial(std::vector<Frequencies> batch, const Measurements& meas) {
  std::vector<Candidate> out;
  out.reserve(batch.size());
  for (auto& f : batch) out.push_back(evaluate(std::move(f), meas));
  return out;
}

std::vector<Candidate> evaluate_batch(std::vector<Frequencies> batch, const Measurements& meas) {
  // exceptions must not escape the parallel region
  for (const auto& f : batch)
    if (f.empty() || static_cast<int>(f.size()) > meas.max_order() ||
        !std::all_of(f.begin(), f.end(), in_frequency_domain))
      throw std::domain_error("evaluate_batch: invalid frequency combination");
  std::vector<Candidate> out(batch.size());
  const auto n = static_cast<long>(batch.size());
#pragma omp parallel for schedule(dynamic, 1) if (!omp_in_parallel() && n > 1)
  for (long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = evaluate(std::move(batch[k]), meas);
  }
  return out;
}

}  // namespace evolse
