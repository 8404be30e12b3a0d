#pragma once

#include <map>
#include <optional>
#include <vector>

#include "evolse/amplitude_solver.hpp"

namespace evolse {

/// Best candidate found so far for each model order.
///
/// At most one entry per order; an entry is only ever replaced by a candidate of
/// the same order with strictly lower residual, so each per-order residual is
/// non-increasing over time.
class Archive {
 public:
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  bool contains(int order) const { return entries_.count(order) != 0; }
  const Candidate* find(int order) const;
  const std::map<int, Candidate>& entries() const { return entries_; }
  std::vector<Candidate> candidates() const;

  /// Inserts or replaces when the offer strictly improves the entry of its order.
  /// Returns true when the archive changed.
  bool offer(const Candidate& c);

 private:
  std::map<int, Candidate> entries_;
};

/// Offers the nondominated members of `population` to the archive. Returns the
/// candidates that joined (inserted or replacing), ordered by model order.
std::vector<Candidate> archive_elites(Archive& archive, const std::vector<Candidate>& population);

/// Per-row l2 norm of the amplitude matrix.
std::vector<double> compute_powers(const CMatrix& amplitudes);

/// Keeps the (K - cut) highest-power frequencies and refits. Power ties keep the
/// lower index. Requires 1 <= cut <= K - 1.
Candidate prune_with_cut(const Candidate& candidate, int cut, const Measurements& meas);

/// Draws the cut uniformly from [1, K - 1] and prunes; nullopt when K == 1.
std::optional<Candidate> prune_newcomer(const Candidate& candidate, const Measurements& meas, Rng& rng);

enum class UpdateCase {
  Unchanged,  // incumbent of that order is at least as good
  Replaced,   // pruned candidate replaced the incumbent and one population member
  Inserted,   // no incumbent of that order; archive only
};

/// Applies a pruned candidate to archive and population. In the replacement case
/// the population slot is chosen uniformly at random.
UpdateCase apply_update(Archive& archive, std::vector<Candidate>& population, const Candidate& pruned, Rng& rng);

}  // namespace evolse
