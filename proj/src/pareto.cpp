#include "evolse/pareto.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace evolse {

bool pareto_dominates(const Fitness& a, const Fitness& b) {
  const bool no_worse = a.order <= b.order && a.residual <= b.residual;
  const bool better = a.order < b.order || a.residual < b.residual;
  return no_worse && better;
}

std::vector<std::vector<std::size_t>> nondominated_fronts(std::span<const Fitness> points) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<int> count(n, 0);
  std::vector<std::vector<std::size_t>> fronts;

  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (pareto_dominates(points[i], points[j])) {
        dominated[i].push_back(j);
        ++count[j];
      } else if (pareto_dominates(points[j], points[i])) {
        dominated[j].push_back(i);
        ++count[i];
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (count[i] == 0) current.push_back(i);

  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (auto i : current)
      for (auto j : dominated[i])
        if (--count[j] == 0) next.push_back(j);
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distances(std::span<const Fitness> points, std::span<const std::size_t> front) {
  const std::size_t n = front.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, 0.0);
  if (n <= 2) {
    std::fill(dist.begin(), dist.end(), inf);
    return dist;
  }

  auto accumulate = [&](auto value) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return value(front[a]) < value(front[b]); });
    const double lo = value(front[order.front()]);
    const double hi = value(front[order.back()]);
    dist[order.front()] = inf;
    dist[order.back()] = inf;
    if (!(hi > lo)) return;
    for (std::size_t k = 1; k + 1 < n; ++k)
      dist[order[k]] += (value(front[order[k + 1]]) - value(front[order[k - 1]])) / (hi - lo);
  };
  accumulate([&](std::size_t i) { return static_cast<double>(points[i].order); });
  accumulate([&](std::size_t i) { return points[i].residual; });
  return dist;
}

RankedPoints rank_and_crowd(std::span<const Fitness> points) {
  RankedPoints out;
  out.rank.assign(points.size(), 0);
  out.crowding.assign(points.size(), 0.0);
  const auto fronts = nondominated_fronts(points);
  for (std::size_t r = 0; r < fronts.size(); ++r) {
    const auto cd = crowding_distances(points, fronts[r]);
    for (std::size_t k = 0; k < fronts[r].size(); ++k) {
      out.rank[fronts[r][k]] = static_cast<int>(r);
      out.crowding[fronts[r][k]] = cd[k];
    }
  }
  return out;
}

std::vector<Fitness> fitness_of(std::span<const Candidate> candidates) {
  std::vector<Fitness> f;
  f.reserve(candidates.size());
  for (const auto& c : candidates) f.push_back(c.fitness);
  return f;
}

std::vector<std::size_t> nondominated_indices(std::span<const Candidate> candidates) {
  const auto f = fitness_of(candidates);
  auto fronts = nondominated_fronts(f);
  return fronts.empty() ? std::vector<std::size_t>{} : std::move(fronts.front());
}

std::vector<std::size_t> environmental_selection_indices(std::span<const Fitness> pool, std::size_t n) {
  if (n > pool.size()) throw std::invalid_argument("environmental_selection: pool smaller than target size");
  std::vector<std::size_t> chosen;
  chosen.reserve(n);
  for (const auto& front : nondominated_fronts(pool)) {
    if (chosen.size() + front.size() <= n) {
      chosen.insert(chosen.end(), front.begin(), front.end());
      if (chosen.size() == n) break;
      continue;
    }
    const auto cd = crowding_distances(pool, front);
    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cd[a] > cd[b]; });
    for (std::size_t k = 0; chosen.size() < n; ++k) chosen.push_back(front[order[k]]);
    break;
  }
  return chosen;
}

std::vector<Candidate> environmental_selection(std::vector<Candidate> pool, std::size_t n) {
  const auto f = fitness_of(pool);
  const auto idx = environmental_selection_indices(f, n);
  std::vector<Candidate> out;
  out.reserve(n);
  for (auto i : idx) out.push_back(std::move(pool[i]));
  return out;
}

}  // namespace evolse
