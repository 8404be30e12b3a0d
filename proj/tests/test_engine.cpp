#include <doctest.h>

#include <algorithm>

#include "evolse/engine.hpp"
#include "evolse/pareto.hpp"

using namespace evolse;

namespace {

Measurements scenario_data(std::uint64_t seed, int m = 15, int k = 4, int l = 10, std::optional<double> snr = 10.0) {
  Rng rng(seed);
  return synthesize(Scenario::complete(m, k, l, snr), rng).measurements;
}

Candidate fake(int order, double residual) {
  Candidate c;
  c.frequencies.assign(static_cast<std::size_t>(order), 0.0);
  c.fitness = {order, residual};
  return c;
}

}  // namespace

TEST_CASE("initial population shape") {
  const auto meas = scenario_data(1);
  EngineConfig cfg;
  Rng rng(2);
  const auto pop = initialize(meas, cfg, rng);
  REQUIRE(pop.members.size() == 30);
  CHECK(pop.generation == 0);
  int longest = 0;
  for (const auto& c : pop.members) {
    CHECK(c.order() >= 1);
    CHECK(c.order() <= 14);
    longest += c.order() == 14;
  }
  CHECK(longest >= 1);
  CHECK(pop.members[0].frequencies == capon_initial_solution(meas, 14));

  Rng again(2);
  const auto pop2 = initialize(meas, cfg, again);
  for (std::size_t i = 0; i < pop.members.size(); ++i) {
    CHECK(pop.members[i].frequencies == pop2.members[i].frequencies);
    CHECK(pop.members[i].fitness == pop2.members[i].fitness);
  }
}

TEST_CASE("initialization needs two observed sensors") {
  Measurements meas;
  meas.observed_indices = {0};
  meas.data = CMatrix::Ones(1, 3);
  Rng rng(1);
  CHECK_THROWS_AS(initialize(meas, EngineConfig{}, rng), std::domain_error);
}

TEST_CASE("tournament prefers rank, then crowding") {
  Population pop;
  pop.members = {fake(1, 1.0), fake(2, 2.0)};  // member 0 dominates member 1
  Rng rng(3);
  const auto winners = tournament_selection(pop, rng);
  CHECK(winners.size() == 2);
  // index 1 can only win against itself
  for (int t = 0; t < 200; ++t) {
    const auto w = tournament_selection(pop, rng);
    for (auto i : w) CHECK(i <= 1);
  }

  // a single front: the interior point has finite crowding and loses to extremes
  Population front;
  front.members = {fake(1, 4.0), fake(2, 2.0), fake(3, 1.5), fake(4, 0.0)};
  std::size_t interior = 0, total = 0;
  for (int t = 0; t < 200; ++t)
    for (auto i : tournament_selection(front, rng)) {
      interior += i == 1 || i == 2;
      ++total;
    }
  CHECK(static_cast<double>(interior) / total < 0.4);

  Population same;
  same.members.assign(6, fake(2, 1.0));
  CHECK(tournament_selection(same, rng).size() == 6);
}

TEST_CASE("offspring respect the length bounds") {
  const auto meas = scenario_data(4, 8, 3, 6);
  EngineConfig cfg;
  cfg.population_size = 11;
  Rng rng(5);
  const auto pop = initialize(meas, cfg, rng);
  for (int t = 0; t < 30; ++t) {
    const auto parents = tournament_selection(pop, rng);
    const auto kids = make_offspring(pop, parents, 11, meas.max_order(), cfg.eta, rng);
    CHECK(kids.size() == 11);
    for (const auto& k : kids) {
      CHECK(!k.empty());
      CHECK(static_cast<int>(k.size()) <= meas.max_order());
      for (double x : k) CHECK(in_frequency_domain(x));
    }
  }
}

TEST_CASE("a generation keeps N, counts evaluations and never worsens the archive") {
  const auto meas = scenario_data(6);
  EngineConfig cfg;
  Rng rng(7);
  SearchState state;
  state.population = initialize(meas, cfg, rng);
  state.evaluations = cfg.population_size;
  for (int g = 0; g < 15; ++g) {
    const Archive before = state.archive;
    const int evals = state.evaluations;
    step_generation(state, meas, cfg, rng);
    CHECK(state.population.members.size() == 30);
    CHECK(state.population.generation == g + 1);
    CHECK(state.evaluations >= evals + 30);
    CHECK(state.evaluations <= evals + 30 + 14);
    for (const auto& [order, c] : before.entries()) {
      REQUIRE(state.archive.contains(order));
      CHECK(state.archive.find(order)->residual() <= c.residual());
    }
    for (const auto& c : state.population.members) {
      CHECK(c.order() >= 1);
      CHECK(c.order() <= 14);
    }
  }
}

TEST_CASE("search respects budgets and is deterministic") {
  const auto meas = scenario_data(8);
  EngineConfig cfg;
  Rng a(9), b(9);
  int observed = 0;
  const auto r1 = run_search(meas, cfg, a, [&](const GenerationLog& log) {
    ++observed;
    CHECK(log.state != nullptr);
    CHECK(log.evaluations <= cfg.max_evaluations);
  });
  const auto r2 = run_search(meas, cfg, b);
  CHECK(r1.generations == observed);
  CHECK(r1.generations <= 100);
  CHECK(r1.evaluations <= 5000);
  CHECK(r1.knee.frequencies == r2.knee.frequencies);
  CHECK(r1.knee_changes == r2.knee_changes);
  CHECK(r1.evaluations == r2.evaluations);
}

TEST_CASE("tight budgets stop the loop") {
  const auto meas = scenario_data(10);
  EngineConfig cfg;
  cfg.max_evaluations = 200;
  cfg.stall_generations = 0;
  Rng rng(11);
  const auto r = run_search(meas, cfg, rng);
  CHECK(r.evaluations <= 200);
  cfg.max_evaluations = 5000;
  cfg.max_generations = 4;
  Rng rng2(11);
  CHECK(run_search(meas, cfg, rng2).generations == 4);
}

TEST_CASE("parallel evaluation gives the same search") {
  const auto meas = scenario_data(12);
  EngineConfig cfg;
  cfg.max_generations = 10;
  Rng a(13), b(13);
  const auto serial = run_search(meas, cfg, a);
  cfg.parallel_evaluation = true;
  const auto parallel = run_search(meas, cfg, b);
  CHECK(serial.knee.frequencies == parallel.knee.frequencies);
  CHECK(serial.evaluations == parallel.evaluations);
}

TEST_CASE("variants") {
  CHECK(parse_variant("full") == Variant::Full);
  CHECK(parse_variant("archive") == Variant::ArchiveOnly);
  CHECK(parse_variant("none") == Variant::NoArchive);
  CHECK_THROWS_AS(parse_variant("bogus"), std::invalid_argument);
  CHECK(to_string(Variant::ArchiveOnly) == "archive");

  const auto meas = scenario_data(14);
  for (auto v : {Variant::ArchiveOnly, Variant::NoArchive}) {
    EngineConfig cfg;
    cfg.variant = v;
    cfg.max_generations = 8;
    Rng rng(15);
    const auto r = run_search(meas, cfg, rng);
    // without pruning each generation costs exactly N evaluations
    CHECK(r.evaluations == 30 * (r.generations + 1));
    if (v == Variant::NoArchive) CHECK(r.final_state.archive.empty());
  }
}

TEST_CASE("engine configuration validation") {
  EngineConfig cfg;
  cfg.population_size = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.eta = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
