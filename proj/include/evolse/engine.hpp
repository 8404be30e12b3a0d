#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "evolse/amplitude_solver.hpp"
#include "evolse/archive.hpp"
#include "evolse/knee.hpp"

namespace evolse {

/// Which parts of the archive/pruning step run. `Full` is the complete method;
/// the others exist for ablation.
enum class Variant {
  Full,         // archiving and model-order pruning
  ArchiveOnly,  // archiving, no pruning
  NoArchive,    // neither; the knee is taken from the final population
};

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view s);

struct EngineConfig {
  int population_size = 30;
  double eta = 20.0;  // polynomial mutation distribution index
  int max_generations = 100;
  int max_evaluations = 5000;
  double stall_tolerance = 1e-6;
  int stall_generations = 3;
  Variant variant = Variant::Full;
  bool parallel_evaluation = false;

  void validate() const;
  StoppingRule stopping_rule() const;
};

struct Population {
  std::vector<Candidate> members;
  int generation = 0;
};

/// Everything a generation step reads and mutates.
struct SearchState {
  Population population;
  Archive archive;
  int evaluations = 0;
};

/// One Capon solution of length M_sel - 1 plus N - 1 random combinations with
/// lengths uniform on [1, M_sel - 1], all evaluated.
Population initialize(const Measurements& meas, const EngineConfig& config, Rng& rng);

/// N binary tournaments (with replacement) on front rank, then crowding distance,
/// then a fair coin. Returns indices into the population.
std::vector<std::size_t> tournament_selection(const Population& population, Rng& rng);

/// Crossover + mutation of consecutive parent pairs into exactly `count`
/// unevaluated children, each capped at `max_order`.
std::vector<Frequencies> make_offspring(const Population& population, std::span<const std::size_t> parents,
                                        std::size_t count, int max_order, double eta, Rng& rng);

/// Tournament, variation, evaluation, environmental selection, then archiving and
/// pruning according to the variant. Advances the generation counter.
void step_generation(SearchState& state, const Measurements& meas, const EngineConfig& config, Rng& rng);

/// Knee of the state: from the archive, or from the population for `NoArchive`
/// (and before the archive has been filled).
Candidate current_knee(const SearchState& state, const EngineConfig& config);

struct GenerationLog {
  int generation = 0;
  int evaluations = 0;
  double knee_change = 0.0;
  const SearchState* state = nullptr;
};

struct SearchResult {
  Candidate knee;
  SearchState final_state;
  int generations = 0;
  int evaluations = 0;
  std::vector<double> knee_changes;
};

using GenerationObserver = std::function<void(const GenerationLog&)>;

/// Runs the generational loop until the stopping rule fires.
SearchResult run_search(const Measurements& meas, const EngineConfig& config, Rng& rng,
                        const GenerationObserver& observer = {});

}  // namespace evolse
