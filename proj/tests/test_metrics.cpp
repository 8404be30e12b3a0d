#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "evolse/metrics.hpp"
#include "oracles.hpp"

using namespace evolse;

namespace {

TrialRecord record(Frequencies truth, Frequencies estimate) {
  TrialRecord r;
  r.truth = std::move(truth);
  r.estimate = std::move(estimate);
  r.error_norm = frequency_error_norm(r.estimate, r.truth);
  return r;
}

Frequencies random_freqs(Rng& rng, std::size_t n) {
  Frequencies f(n);
  for (auto& x : f) x = uniform_frequency(rng);
  return f;
}

}  // namespace

TEST_CASE("rmse examples") {
  {
    const std::vector<TrialRecord> t{record({-0.2, 0.4}, {-0.2, 0.4})};
    CHECK(*assignment_rmse(t) == 0.0);
  }
  {
    const std::vector<TrialRecord> t{record({-0.2, 0.1, 0.4}, {0.4, -0.2, 0.1})};
    CHECK(*assignment_rmse(t) == 0.0);
  }
  {
    const std::vector<TrialRecord> t{record({0.0}, {0.1})};
    CHECK(*assignment_rmse(t) == doctest::Approx(0.31622776601683794).epsilon(1e-12));
  }
}

TEST_CASE("rmse only counts trials that found enough frequencies") {
  const std::vector<TrialRecord> t{record({0.0, 0.5}, {0.1}), record({0.0}, {0.1})};
  CHECK_FALSE(t[0].error_norm.has_value());
  CHECK(*assignment_rmse(t) == doctest::Approx(std::sqrt(0.1)));
  const std::vector<TrialRecord> none{record({0.0, 0.5}, {0.1})};
  CHECK_FALSE(assignment_rmse(none).has_value());
}

TEST_CASE("spurious estimates do not contribute") {
  CHECK(*frequency_error_norm(Frequencies{0.1, -0.7, 0.5}, Frequencies{0.5, 0.1}) == 0.0);
}

TEST_CASE("wrap-around matching") {
  const auto n = frequency_error_norm(Frequencies{0.98}, Frequencies{-0.98});
  CHECK(*n == doctest::Approx(0.04));
}

TEST_CASE("success rate") {
  std::vector<TrialRecord> t{record({0.1}, {0.1}), record({0.1}, {0.1}), record({0.1}, {0.1}),
                             record({0.1}, {0.1, 0.2})};
  CHECK(success_rate(t) == 0.75);
  t.pop_back();
  CHECK(success_rate(t) == 1.0);
  const std::vector<TrialRecord> bad{record({0.1}, {0.1, 0.2})};
  CHECK(success_rate(bad) == 0.0);
  CHECK_THROWS(success_rate(std::span<const TrialRecord>{}));
  std::vector<TrialRecord> failed{record({0.1}, {0.1})};
  failed[0].failed = true;
  CHECK(success_rate(failed) == 0.0);
}

TEST_CASE("matching cost equals exhaustive enumeration") {
  Rng rng(51);
  for (int t = 0; t < 100; ++t) {
    const std::size_t k = 1 + rng() % 6;
    const std::size_t extra = rng() % 3;
    const auto truth = random_freqs(rng, k);
    const auto est = random_freqs(rng, std::min<std::size_t>(k + extra, 7));
    const auto m = match_frequencies(est, truth);
    CHECK(m.cost == doctest::Approx(oracle::brute_force_assignment_cost(est, truth)).epsilon(1e-12));
    // distinct estimates
    auto used = m.estimate_for_truth;
    std::sort(used.begin(), used.end());
    CHECK(std::adjacent_find(used.begin(), used.end()) == used.end());
  }
}

TEST_CASE("matching never loses to sorted pairing") {
  Rng rng(52);
  for (int t = 0; t < 100; ++t) {
    const std::size_t k = 1 + rng() % 6;
    auto truth = random_freqs(rng, k);
    auto est = random_freqs(rng, k);
    std::sort(truth.begin(), truth.end());
    std::sort(est.begin(), est.end());
    double sorted_cost = 0.0;
    for (std::size_t i = 0; i < k; ++i) sorted_cost += wrap_distance(est[i], truth[i]);
    CHECK(match_frequencies(est, truth).cost <= sorted_cost + 1e-12);
  }
}

TEST_CASE("rmse is symmetric under permutations") {
  Rng rng(53);
  for (int t = 0; t < 50; ++t) {
    auto truth = random_freqs(rng, 4);
    auto est = random_freqs(rng, 5);
    const auto base = *frequency_error_norm(est, truth);
    std::shuffle(truth.begin(), truth.end(), rng);
    std::shuffle(est.begin(), est.end(), rng);
    CHECK(*frequency_error_norm(est, truth) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("hungarian on a small rectangular matrix") {
  // rows x cols = 2 x 3
  const std::vector<double> cost{4, 1, 6, 2, 0, 5};
  const auto a = hungarian(cost, 2, 3);
  CHECK(a[0] == 1);
  CHECK(a[1] == 0);
  CHECK_THROWS(match_frequencies(Frequencies{0.1}, Frequencies{0.1, 0.2}));
}
