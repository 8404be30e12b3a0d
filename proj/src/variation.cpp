#include "evolse/variation.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <stdexcept>

namespace evolse {

std::size_t Alignment::num_pairs() const {
  return static_cast<std::size_t>(
      std::count_if(columns.begin(), columns.end(), [](const AlignedColumn& c) { return c.paired(); }));
}

namespace {

struct Score {
  int pairs = 0;
  double cost = 0.0;

  bool better_than(const Score& o) const { return pairs > o.pairs || (pairs == o.pairs && cost < o.cost); }
};

double column_value(const AlignedColumn& c) { return c.first ? *c.first : *c.second; }

// Gap columns between two consecutive pairs are ordered by value.
void order_gap_runs(std::vector<AlignedColumn>& cols) {
  auto it = cols.begin();
  while (it != cols.end()) {
    if (it->paired()) {
      ++it;
      continue;
    }
    auto end = std::find_if(it, cols.end(), [](const AlignedColumn& c) { return c.paired(); });
    std::stable_sort(it, end,
                     [](const AlignedColumn& a, const AlignedColumn& b) { return column_value(a) < column_value(b); });
    it = end;
  }
}

}  // namespace

Alignment align_parents(std::span<const double> p1, std::span<const double> p2) {
  if (p1.empty() || p2.empty()) throw std::invalid_argument("align_parents: parents must be nonempty");
  const std::size_t n = p1.size();
  const std::size_t m = p2.size();
  std::vector<Score> dp((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> Score& { return dp[i * (m + 1) + j]; };

  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      if (i == 0 && j == 0) continue;
      Score best{-1, 0.0};
      if (i > 0 && j > 0) {
        best = at(i - 1, j - 1);
        best.pairs += 1;
        best.cost += std::abs(p1[i - 1] - p2[j - 1]);
      }
      if (i > 0 && at(i - 1, j).better_than(best)) best = at(i - 1, j);
      if (j > 0 && at(i, j - 1).better_than(best)) best = at(i, j - 1);
      at(i, j) = best;
    }
  }

  // Backtrack, preferring a pair whenever it reproduces the optimum.
  Alignment out;
  out.cost = at(n, m).cost;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      Score via_pair = at(i - 1, j - 1);
      via_pair.pairs += 1;
      via_pair.cost += std::abs(p1[i - 1] - p2[j - 1]);
      if (!at(i, j).better_than(via_pair) && !via_pair.better_than(at(i, j))) {
        out.columns.push_back({p1[i - 1], p2[j - 1]});
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && !at(i, j).better_than(at(i - 1, j)) && !at(i - 1, j).better_than(at(i, j))) {
      out.columns.push_back({p1[i - 1], std::nullopt});
      --i;
    } else {
      out.columns.push_back({std::nullopt, p2[j - 1]});
      --j;
    }
  }
  std::reverse(out.columns.begin(), out.columns.end());
  order_gap_runs(out.columns);
  return out;
}

Offspring crossover_at(const Alignment& alignment, std::span<const std::size_t> cuts) {
  const std::size_t columns = alignment.columns.size();
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    if (cuts[k] == 0 || cuts[k] >= columns || (k > 0 && cuts[k] <= cuts[k - 1]))
      throw std::invalid_argument("crossover_at: cut positions must be increasing internal boundaries");
  }
  Offspring kids;
  std::size_t segment = 0;
  std::size_t next_cut = 0;
  for (std::size_t c = 0; c < columns; ++c) {
    if (next_cut < cuts.size() && cuts[next_cut] == c) {
      ++segment;
      ++next_cut;
    }
    // segments are numbered from one; the even ones trade places
    const bool exchange = segment % 2 == 1;
    const auto& col = alignment.columns[c];
    const auto& to_first = exchange ? col.second : col.first;
    const auto& to_second = exchange ? col.first : col.second;
    if (to_first) kids.first.push_back(*to_first);
    if (to_second) kids.second.push_back(*to_second);
  }
  std::sort(kids.first.begin(), kids.first.end());
  std::sort(kids.second.begin(), kids.second.end());
  return kids;
}

Offspring variable_length_crossover(std::span<const double> p1, std::span<const double> p2, Rng& rng) {
  const Alignment alignment = align_parents(p1, p2);
  const std::size_t boundaries = alignment.columns.size() - 1;
  Offspring parents{Frequencies(p1.begin(), p1.end()), Frequencies(p2.begin(), p2.end())};
  if (boundaries == 0) return parents;

  std::vector<std::size_t> positions(boundaries);
  std::iota(positions.begin(), positions.end(), 1);
  std::uniform_int_distribution<std::size_t> count_dist(1, std::min(p1.size(), p2.size()));

  for (int attempt = 0; attempt < 10; ++attempt) {
    const std::size_t n_cuts = std::min(count_dist(rng), boundaries);
    std::vector<std::size_t> cuts;
    cuts.reserve(n_cuts);
    std::sample(positions.begin(), positions.end(), std::back_inserter(cuts), n_cuts, rng);
    Offspring kids = crossover_at(alignment, cuts);
    if (!kids.first.empty() && !kids.second.empty()) return kids;
  }
  return parents;
}

double mutate_gene(double theta, double u, double eta) {
  const double power = 1.0 / (eta + 1.0);
  const double delta = u < 0.5 ? std::pow(2.0 * u, power) - 1.0 : 1.0 - std::pow(2.0 * (1.0 - u), power);
  // domain width is 2
  return wrap_frequency(theta + 2.0 * delta);
}

Frequencies polynomial_mutation(Frequencies thetas, double eta, Rng& rng) {
  if (thetas.empty()) throw std::invalid_argument("polynomial_mutation: empty frequency combination");
  const double rate = 1.0 / static_cast<double>(thetas.size());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (auto& theta : thetas) {
    if (unit(rng) < rate) theta = mutate_gene(theta, unit(rng), eta);
  }
  std::sort(thetas.begin(), thetas.end());
  return thetas;
}

void cap_length(Frequencies& thetas, int max_length, Rng& rng) {
  while (static_cast<int>(thetas.size()) > max_length) {
    std::uniform_int_distribution<std::size_t> pick(0, thetas.size() - 1);
    thetas.erase(thetas.begin() + static_cast<long>(pick(rng)));
  }
}

}  // namespace evolse
