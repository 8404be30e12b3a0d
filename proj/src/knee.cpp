#include "evolse/knee.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "evolse/pareto.hpp"

namespace evolse {

std::vector<FrontPoint> normalized_front(std::span<const Fitness> points) {
  std::map<int, double> best;
  for (const auto& p : points) {
    auto [it, inserted] = best.emplace(p.order, p.residual);
    if (!inserted) it->second = std::min(it->second, p.residual);
  }
  // sweeping by increasing order, a point survives only if it beats every lower order
  std::vector<FrontPoint> front;
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& [order, residual] : best) {
    if (residual < lowest) {
      front.push_back({order, residual, 0.0, 0.0});
      lowest = residual;
    }
  }
  if (front.empty()) return front;

  const double x_lo = front.front().order;
  const double x_hi = front.back().order;
  const double y_lo = front.back().residual;
  const double y_hi = front.front().residual;
  for (auto& p : front) {
    p.x = x_hi > x_lo ? (p.order - x_lo) / (x_hi - x_lo) : 0.0;
    p.y = y_hi > y_lo ? (p.residual - y_lo) / (y_hi - y_lo) : 0.0;
  }
  return front;
}

std::vector<double> slope_changes(std::span<const FrontPoint> front) {
  std::vector<double> out(front.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 1; i + 1 < front.size(); ++i) {
    const double in = (front[i].y - front[i - 1].y) / (front[i].x - front[i - 1].x);
    const double out_slope = (front[i + 1].y - front[i].y) / (front[i + 1].x - front[i].x);
    out[i] = out_slope - in;
  }
  return out;
}

std::size_t knee_index(std::span<const FrontPoint> front) {
  if (front.empty()) throw std::invalid_argument("knee_index: empty front");
  if (front.size() <= 2) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < front.size(); ++i)
      if (front[i].residual < front[best].residual) best = i;
    return best;
  }
  const auto score = slope_changes(front);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < front.size(); ++i) top = std::max(top, score[i]);
  for (std::size_t i = 1; i + 1 < front.size(); ++i)
    if (score[i] >= top - 1e-12) return i;
  return 1;
}

Candidate identify_knee(const Archive& archive) {
  if (archive.empty()) throw std::invalid_argument("identify_knee: archive is empty");
  std::vector<Fitness> pts;
  pts.reserve(archive.size());
  for (const auto& [order, c] : archive.entries()) pts.push_back(c.fitness);
  const auto front = normalized_front(pts);
  return *archive.find(front[knee_index(front)].order);
}

Candidate identify_knee(std::span<const Candidate> candidates) {
  Archive best;
  for (const auto& c : candidates) best.offer(c);
  return identify_knee(best);
}

double relative_change(const CMatrix& current, const CMatrix& previous) {
  const double diff = (current - previous).norm();
  const double base = previous.norm();
  if (base == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / base;
}

bool stopping_met(std::span<const double> relative_changes, int generation, int evaluations,
                  const StoppingRule& rule) {
  if (generation >= rule.max_generations || evaluations >= rule.max_evaluations) return true;
  if (rule.consecutive <= 0) return false;
  const auto need = static_cast<std::size_t>(rule.consecutive);
  if (relative_changes.size() < need) return false;
  return std::all_of(relative_changes.end() - static_cast<long>(need), relative_changes.end(),
                     [&](double c) { return c < rule.tolerance; });
}

}  // namespace evolse
