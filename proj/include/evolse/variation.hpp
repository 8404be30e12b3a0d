#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "evolse/types.hpp"

namespace evolse {

/// One column of an aligned parent pair. Either side may be a gap.
struct AlignedColumn {
  std::optional<double> first;
  std::optional<double> second;

  bool paired() const { return first.has_value() && second.has_value(); }
};

struct Alignment {
  std::vector<AlignedColumn> columns;
  double cost = 0.0;  // sum of |a - b| over paired columns

  std::size_t num_pairs() const;
};

/// Links each frequency of the shorter parent to its most similar counterpart.
///
/// Among monotone (non-crossing) matchings of maximum cardinality, picks the one
/// with the least total absolute distance, by dynamic programming over prefixes.
/// Unmatched entries become gap columns, placed in value order between pairs.
Alignment align_parents(std::span<const double> p1, std::span<const double> p2);

using Offspring = std::pair<Frequencies, Frequencies>;

/// Cuts the aligned columns before each position in `cuts` (values in
/// [1, columns - 1], strictly increasing) and exchanges every second segment.
/// Children are sorted ascending and may be empty.
Offspring crossover_at(const Alignment& alignment, std::span<const std::size_t> cuts);

/// Variable-length n-point crossover. The number of cut points is uniform on
/// [1, length of the shorter parent], limited by the number of internal column
/// boundaries. Draws that would leave a child empty are retried up to 10 times,
/// after which the parents are returned unchanged.
Offspring variable_length_crossover(std::span<const double> p1, std::span<const double> p2, Rng& rng);

/// Polynomial mutation of one gene over the period-2 domain, given the uniform
/// draw u in [0, 1). Result is wrapped into [-1, 1).
double mutate_gene(double theta, double u, double eta);

/// Mutates each gene with probability 1/k, then re-sorts.
Frequencies polynomial_mutation(Frequencies thetas, double eta, Rng& rng);

/// Removes uniformly chosen entries until at most `max_length` remain.
void cap_length(Frequencies& thetas, int max_length, Rng& rng);

}  // namespace evolse
