#pragma once

#include <span>
#include <vector>

#include "evolse/amplitude_solver.hpp"
#include "evolse/archive.hpp"

namespace evolse {

/// A point of the nondominated front with both objectives min-max normalized.
/// A constant objective normalizes to 0.
struct FrontPoint {
  int order = 0;
  double residual = 0.0;
  double x = 0.0;  // normalized order
  double y = 0.0;  // normalized residual
};

/// Nondominated subset of `points`, one point per order, sorted by order.
std::vector<FrontPoint> normalized_front(std::span<const Fitness> points);

/// Kink-method score of each interior front point: how much steeper the front
/// falls into the point than it falls out of it. Boundary entries are NaN.
std::vector<double> slope_changes(std::span<const FrontPoint> front);

/// Index into `front` of the knee. The largest slope change wins; scores within
/// 1e-12 of the maximum resolve to the smallest order. Fronts of one or two
/// points return the minimum-residual point.
std::size_t knee_index(std::span<const FrontPoint> front);

/// Knee of the archive's nondominated entries. Throws on an empty archive.
Candidate identify_knee(const Archive& archive);

/// Knee over an arbitrary candidate set (per-order best taken first).
Candidate identify_knee(std::span<const Candidate> candidates);

struct StoppingRule {
  double tolerance = 1e-6;
  int consecutive = 3;
  int max_generations = 100;
  int max_evaluations = 5000;
};

/// ||current - previous||_F / ||previous||_F, with 0/0 = 0 and x/0 = inf.
double relative_change(const CMatrix& current, const CMatrix& previous);

/// `relative_changes` holds one entry per completed generation after the first
/// (the change of the knee estimate against the generation before).
bool stopping_met(std::span<const double> relative_changes, int generation, int evaluations,
                  const StoppingRule& rule);

}  // namespace evolse
