#pragma once

#include <span>
#include <vector>

#include "evolse/amplitude_solver.hpp"

namespace evolse {

/// True iff a is no worse than b in both objectives and strictly better in one.
bool pareto_dominates(const Fitness& a, const Fitness& b);

/// Fast nondominated sort. Returns fronts of indices, best front first; within a
/// front indices are ascending.
std::vector<std::vector<std::size_t>> nondominated_fronts(std::span<const Fitness> points);

/// Crowding distance for one front, aligned with `front`. Boundary points of each
/// objective get +infinity; a constant objective contributes nothing.
std::vector<double> crowding_distances(std::span<const Fitness> points, std::span<const std::size_t> front);

/// Per-point front rank (0 = nondominated) and crowding distance.
struct RankedPoints {
  std::vector<int> rank;
  std::vector<double> crowding;
};
RankedPoints rank_and_crowd(std::span<const Fitness> points);

std::vector<Fitness> fitness_of(std::span<const Candidate> candidates);

/// Indices of the nondominated members.
std::vector<std::size_t> nondominated_indices(std::span<const Candidate> candidates);

/// NSGA-II survivor selection: whole fronts first, then the last admitted front
/// by descending crowding distance (ties keep lower index). Returns exactly n
/// indices into `pool`.
std::vector<std::size_t> environmental_selection_indices(std::span<const Fitness> pool, std::size_t n);

std::vector<Candidate> environmental_selection(std::vector<Candidate> pool, std::size_t n);

}  // namespace evolse
