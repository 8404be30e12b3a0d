#include "evolse/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace evolse {

namespace {

// Scalar cost.
struct Plain {
  double v = 0.0;
  static Plain infinity() { return {std::numeric_limits<double>::infinity()}; }
  friend Plain operator+(Plain a, Plain b) { return {a.v + b.v}; }
  friend Plain operator-(Plain a, Plain b) { return {a.v - b.v}; }
  Plain& operator+=(Plain b) { return *this = *this + b; }
  Plain& operator-=(Plain b) { return *this = *this - b; }
  friend bool operator<(Plain a, Plain b) { return a.v < b.v; }
};

// Primary cost with a secondary tie-break, ordered lexicographically.
struct Lex {
  double first = 0.0;
  double second = 0.0;
  static Lex infinity() {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
  }
  friend Lex operator+(Lex a, Lex b) { return {a.first + b.first, a.second + b.second}; }
  friend Lex operator-(Lex a, Lex b) { return {a.first - b.first, a.second - b.second}; }
  Lex& operator+=(Lex b) { return *this = *this + b; }
  Lex& operator-=(Lex b) { return *this = *this - b; }
  // primary values closer than rounding noise count as equal
  friend bool operator<(Lex a, Lex b) {
    if (std::abs(a.first - b.first) > 1e-12 * (1.0 + std::abs(a.first) + std::abs(b.first))) return a.first < b.first;
    return a.second < b.second;
  }
};

template <class T>
std::vector<std::size_t> solve_assignment(std::span<const T> cost, std::size_t rows, std::size_t cols) {
  if (rows > cols) throw std::invalid_argument("hungarian: more rows than columns");
  if (cost.size() != rows * cols) throw std::invalid_argument("hungarian: cost size mismatch");
  const T inf = T::infinity();
  auto a = [&](std::size_t i, std::size_t j) { return cost[(i - 1) * cols + (j - 1)]; };

  // 1-based potentials; column 0 is the virtual start
  std::vector<T> u(rows + 1), v(cols + 1);
  std::vector<std::size_t> p(cols + 1, 0), way(cols + 1, 0);
  for (std::size_t i = 1; i <= rows; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<T> minv(cols + 1, inf);
    std::vector<bool> used(cols + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      T delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        const T cur = a(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> col_for_row(rows, 0);
  for (std::size_t j = 1; j <= cols; ++j)
    if (p[j] != 0) col_for_row[p[j] - 1] = j - 1;
  return col_for_row;
}


}  // namespace

std::vector<std::size_t> hungarian(std::span<const double> cost, std::size_t rows, std::size_t cols) {
  std::vector<Plain> c(cost.size());
  for (std::size_t i = 0; i < cost.size(); ++i) c[i].v = cost[i];
  return solve_assignment<Plain>(c, rows, cols);
}

Assignment match_frequencies(std::span<const double> estimates, std::span<const double> truth) {
  if (estimates.size() < truth.size())
    throw std::invalid_argument("match_frequencies: fewer estimates than true frequencies");
  Assignment out;
  if (truth.empty()) return out;
  // equal summed distances are resolved by the smaller sum of squares, so the
  // error norm does not depend on the input order
  std::vector<Lex> cost(truth.size() * estimates.size());
  for (std::size_t k = 0; k < truth.size(); ++k)
    for (std::size_t j = 0; j < estimates.size(); ++j) {
      const double d = wrap_distance(estimates[j], truth[k]);
      cost[k * estimates.size() + j] = {d, d * d};
    }
  out.estimate_for_truth = solve_assignment<Lex>(cost, truth.size(), estimates.size());
  for (std::size_t k = 0; k < truth.size(); ++k)
    out.cost += cost[k * estimates.size() + out.estimate_for_truth[k]].first;
  return out;
}

std::optional<double> frequency_error_norm(std::span<const double> estimates, std::span<const double> truth) {
  if (estimates.size() < truth.size()) return std::nullopt;
  const Assignment match = match_frequencies(estimates, truth);
  double sum = 0.0;
  for (std::size_t k = 0; k < truth.size(); ++k) {
    const double e = wrap_distance(estimates[match.estimate_for_truth[k]], truth[k]);
    sum += e * e;
  }
  return std::sqrt(sum);
}

std::optional<double> assignment_rmse(std::span<const TrialRecord> trials) {
  // Square root of the mean of the per-trial l2 norms (not of squared norms).
  double sum = 0.0;
  std::size_t used = 0;
  for (const auto& t : trials) {
    if (t.failed || !t.error_norm) continue;
    sum += *t.error_norm;
    ++used;
  }
  if (used == 0) return std::nullopt;
  return std::sqrt(sum / static_cast<double>(used));
}

double success_rate(std::span<const TrialRecord> trials) {
  if (trials.empty()) throw std::invalid_argument("success_rate: no trials");
  std::size_t hits = 0;
  for (const auto& t : trials) hits += t.success() ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(trials.size());
}

}  // namespace evolse
