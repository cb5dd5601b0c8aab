#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gga/config.hpp"
#include "gga/learning.hpp"
#include "gga/objectives.hpp"
#include "gga/operators.hpp"
#include "gga/population.hpp"
#include "gga/random.hpp"

namespace gga {

struct GenerationRecord {
  int t = 0;
  double best_fitness = 0.0;
  /// Phenotype of the fittest individual (the learned position for the
  /// learning variants).
  RealVector best_point;
  double mean_fitness = 0.0;
  MutationRates rates;
  std::size_t male_count = 0;
};

struct RunHistory {
  /// One record per generation 0..t_max.
  std::vector<GenerationRecord> records;
  std::string config_digest;
  std::uint64_t seed = 0;
  /// Generations in which a parent role fell back to whole-population
  /// proportional selection because its gender subset was empty.
  std::size_t fallback_events = 0;
  /// Last generation, evaluated.
  Population final_population;
};

/// Called once per generation with the evaluated (mutated, learned)
/// population, before reproduction.
using GenerationObserver =
    std::function<void(const Population& evaluated, const GenerationRecord& record)>;

/// Baldwin for BGGA, Lamarck for LGGA.
LearningMode learning_mode(Variant v);

/// Runs the generational loop for t = 0..t_max. Each generation:
/// gender draw (gendered variants), schedule update, gender-based mutation
/// (skipped at t_max and for carried-over elites), learning (BGGA/LGGA),
/// evaluation, then reproduction into the next generation.
///
/// Throws EvaluationError naming (t, individual) when the objective fails.
RunHistory evolve(const EvolutionConfig& config, const ObjectiveSpec& objective,
                  RandomSource& rng, const GenerationObserver& observer = {});

/// Next generation from an evaluated mating pool: elitism_count elites copied
/// unchanged, the remaining slots filled by one-child crossovers of a
/// proportionally selected male and a uniformly selected female (both parents
/// proportional for the plain GA). Returns the number of parent roles that
/// needed the empty-subset fallback through `fallbacks`.
Population reproduce(const Population& pool, std::span<const double> fitness,
                     const EvolutionConfig& config, RandomSource& rng,
                     std::size_t* fallbacks = nullptr);

}  // namespace gga
