#include "evolse/engine.hpp"

#include <stdexcept>
#include <string>

#include "evolse/pareto.hpp"
#include "evolse/variation.hpp"

namespace evolse {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Full: return "full";
    case Variant::ArchiveOnly: return "archive";
    case Variant::NoArchive: return "none";
  }
  return "full";
}

Variant parse_variant(std::string_view s) {
  if (s == "full") return Variant::Full;
  if (s == "archive") return Variant::ArchiveOnly;
  if (s == "none") return Variant::NoArchive;
  throw std::invalid_argument("unknown variant '" + std::string(s) + "' (expected full, archive or none)");
}

void EngineConfig::validate() const {
  if (population_size < 2) throw std::invalid_argument("engine: population size must be at least 2");
  if (!(eta > 0.0)) throw std::invalid_argument("engine: mutation distribution index must be positive");
  if (max_generations < 0 || max_evaluations < 0) throw std::invalid_argument("engine: negative budget");
}

StoppingRule EngineConfig::stopping_rule() const {
  return {stall_tolerance, stall_generations, max_generations, max_evaluations};
}

Population initialize(const Measurements& meas, const EngineConfig& config, Rng& rng) {
  config.validate();
  const int max_order = meas.max_order();
  if (max_order < 1) throw std::domain_error("initialize: need at least two observed sensors");

  std::vector<Frequencies> seeds;
  seeds.reserve(static_cast<std::size_t>(config.population_size));
  seeds.push_back(capon_initial_solution(meas, max_order));
  std::uniform_int_distribution<int> length(1, max_order);
  while (static_cast<int>(seeds.size()) < config.population_size) {
    Frequencies f(static_cast<std::size_t>(length(rng)));
    for (auto& theta : f) theta = uniform_frequency(rng);
    seeds.push_back(std::move(f));
  }

  Population pop;
  pop.members = config.parallel_evaluation ? evaluate_batch(std::move(seeds), meas)
                                           : evaluate_batch_serial(std::move(seeds), meas);
  return pop;
}

std::vector<std::size_t> tournament_selection(const Population& population, Rng& rng) {
  const auto& members = population.members;
  if (members.empty()) return {};
  const auto fitness = fitness_of(members);
  const auto ranked = rank_and_crowd(fitness);
  std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
  std::bernoulli_distribution coin(0.5);

  std::vector<std::size_t> winners;
  winners.reserve(members.size());
  for (std::size_t t = 0; t < members.size(); ++t) {
    const std::size_t a = pick(rng);
    const std::size_t b = pick(rng);
    if (ranked.rank[a] != ranked.rank[b]) {
      winners.push_back(ranked.rank[a] < ranked.rank[b] ? a : b);
    } else if (ranked.crowding[a] != ranked.crowding[b]) {
      winners.push_back(ranked.crowding[a] > ranked.crowding[b] ? a : b);
    } else {
      winners.push_back(coin(rng) ? a : b);
    }
  }
  return winners;
}

std::vector<Frequencies> make_offspring(const Population& population, std::span<const std::size_t> parents,
                                        std::size_t count, int max_order, double eta, Rng& rng) {
  std::vector<Frequencies> kids;
  kids.reserve(count + 1);
  for (std::size_t p = 0; kids.size() < count; p += 2) {
    const auto& a = population.members[parents[p % parents.size()]].frequencies;
    const auto& b = population.members[parents[(p + 1) % parents.size()]].frequencies;
    auto [c1, c2] = variable_length_crossover(a, b, rng);
    for (Frequencies* child : {&c1, &c2}) {
      *child = polynomial_mutation(std::move(*child), eta, rng);
      cap_length(*child, max_order, rng);
      kids.push_back(std::move(*child));
    }
  }
  kids.resize(count);
  return kids;
}

void step_generation(SearchState& state, const Measurements& meas, const EngineConfig& config, Rng& rng) {
  auto& members = state.population.members;
  const std::size_t n = members.size();

  const auto parents = tournament_selection(state.population, rng);
  auto offspring_genes = make_offspring(state.population, parents, n, meas.max_order(), config.eta, rng);
  auto offspring = config.parallel_evaluation ? evaluate_batch(std::move(offspring_genes), meas)
                                              : evaluate_batch_serial(std::move(offspring_genes), meas);
  state.evaluations += static_cast<int>(offspring.size());

  std::vector<Candidate> pool = std::move(members);
  pool.insert(pool.end(), std::make_move_iterator(offspring.begin()), std::make_move_iterator(offspring.end()));
  members = environmental_selection(std::move(pool), n);

  if (config.variant != Variant::NoArchive) {
    const auto newcomers = archive_elites(state.archive, members);
    if (config.variant == Variant::Full) {
      for (const auto& newcomer : newcomers) {
        if (state.evaluations >= config.max_evaluations) break;
        auto pruned = prune_newcomer(newcomer, meas, rng);
        if (!pruned) continue;
        ++state.evaluations;
        apply_update(state.archive, members, *pruned, rng);
      }
    }
  }
  ++state.population.generation;
}

Candidate current_knee(const SearchState& state, const EngineConfig& config) {
  if (config.variant == Variant::NoArchive || state.archive.empty())
    return identify_knee(std::span<const Candidate>(state.population.members));
  return identify_knee(state.archive);
}

SearchResult run_search(const Measurements& meas, const EngineConfig& config, Rng& rng,
                        const GenerationObserver& observer) {
  SearchResult result;
  SearchState& state = result.final_state;
  state.population = initialize(meas, config, rng);
  state.evaluations = static_cast<int>(state.population.members.size());

  const StoppingRule rule = config.stopping_rule();
  CMatrix previous = synthesize_estimate(current_knee(state, config), meas);
  const int per_generation = config.population_size;
  while (!stopping_met(result.knee_changes, state.population.generation, state.evaluations, rule) &&
         state.evaluations + per_generation <= config.max_evaluations) {
    step_generation(state, meas, config, rng);
    CMatrix estimate = synthesize_estimate(current_knee(state, config), meas);
    const double change = relative_change(estimate, previous);
    result.knee_changes.push_back(change);
    previous = std::move(estimate);
    if (observer) observer({state.population.generation, state.evaluations, change, &state});
  }

  result.knee = current_knee(state, config);
  result.generations = state.population.generation;
  result.evaluations = state.evaluations;
  return result;
}

}  // namespace evolse
