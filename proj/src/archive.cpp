#include "evolse/archive.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "evolse/pareto.hpp"

namespace evolse {

const Candidate* Archive::find(int order) const {
  auto it = entries_.find(order);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<Candidate> Archive::candidates() const {
  std::vector<Candidate> out;
  out.reserve(entries_.size());
  for (const auto& [order, c] : entries_) out.push_back(c);
  return out;
}

bool Archive::offer(const Candidate& c) {
  auto it = entries_.find(c.order());
  if (it == entries_.end()) {
    entries_.emplace(c.order(), c);
    return true;
  }
  // same order, so dominance reduces to a strictly lower residual
  if (pareto_dominates(c.fitness, it->second.fitness)) {
    it->second = c;
    return true;
  }
  return false;
}

std::vector<Candidate> archive_elites(Archive& archive, const std::vector<Candidate>& population) {
  std::vector<Candidate> newcomers;
  for (auto i : nondominated_indices(population)) {
    if (archive.offer(population[i])) newcomers.push_back(population[i]);
  }
  std::stable_sort(newcomers.begin(), newcomers.end(),
                   [](const Candidate& a, const Candidate& b) { return a.order() < b.order(); });
  return newcomers;
}

std::vector<double> compute_powers(const CMatrix& amplitudes) {
  std::vector<double> p(static_cast<std::size_t>(amplitudes.rows()));
  for (Eigen::Index i = 0; i < amplitudes.rows(); ++i) p[static_cast<std::size_t>(i)] = amplitudes.row(i).norm();
  return p;
}

Candidate prune_with_cut(const Candidate& candidate, int cut, const Measurements& meas) {
  const int k = candidate.order();
  if (cut < 1 || cut > k - 1) throw std::invalid_argument("prune_with_cut: cut must lie in [1, K - 1]");
  const auto powers = compute_powers(candidate.amplitudes);
  std::vector<std::size_t> order(powers.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return powers[a] > powers[b]; });

  Frequencies kept;
  kept.reserve(static_cast<std::size_t>(k - cut));
  for (int r = 0; r < k - cut; ++r) kept.push_back(candidate.frequencies[order[static_cast<std::size_t>(r)]]);
  return evaluate(std::move(kept), meas);
}

std::optional<Candidate> prune_newcomer(const Candidate& candidate, const Measurements& meas, Rng& rng) {
  const int k = candidate.order();
  if (k <= 1) return std::nullopt;
  std::uniform_int_distribution<int> cut_dist(1, k - 1);
  return prune_with_cut(candidate, cut_dist(rng), meas);
}

UpdateCase apply_update(Archive& archive, std::vector<Candidate>& population, const Candidate& pruned, Rng& rng) {
  const Candidate* incumbent = archive.find(pruned.order());
  if (incumbent == nullptr) {
    archive.offer(pruned);
    return UpdateCase::Inserted;
  }
  if (!(pruned.residual() < incumbent->residual())) return UpdateCase::Unchanged;

  archive.offer(pruned);
  if (!population.empty()) {
    std::uniform_int_distribution<std::size_t> slot(0, population.size() - 1);
    population[slot(rng)] = pruned;
  }
  return UpdateCase::Replaced;
}

}  // namespace evolse
