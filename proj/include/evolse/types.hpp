#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace evolse {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Normalized frequencies in [-1, 1). The steering phase of sensor m is pi * theta * m.
using Frequencies = std::vector<double>;

using Rng = std::mt19937_64;

/// Maps any real onto the period-2 circle [-1, 1).
double wrap_frequency(double theta);

/// Circular distance on the period-2 frequency circle, in [0, 1].
double wrap_distance(double a, double b);

/// Uniform draw on [-1, 1); never returns 1.
double uniform_frequency(Rng& rng);

inline bool in_frequency_domain(double theta) { return theta >= -1.0 && theta < 1.0; }

}  // namespace evolse
