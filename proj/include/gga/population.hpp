#pragma once

#include <optional>
#include <vector>

#include "gga/config.hpp"
#include "gga/random.hpp"

namespace gga {

enum class Gender { Male, Female };

struct Individual {
  RealVector genotype;
  /// Unset for the plain GA variant and between reproduction and the next
  /// gender draw.
  std::optional<Gender> gender;
  std::optional<double> raw_fitness;
  std::optional<double> learned_fitness;
  std::optional<RealVector> learned_phenotype;
  /// Carried over by elitism; exempt from the next generation's mutation.
  bool elite = false;

  /// Fitness used by selection: learned if present, raw otherwise.
  double fitness() const;
  /// Position at which `fitness()` was attained.
  const RealVector& phenotype() const;
};

struct Population {
  std::vector<Individual> members;
  int generation = 0;

  std::size_t size() const { return members.size(); }
  std::size_t male_count() const;
};

/// N genotypes drawn uniformly per coordinate within the search bounds.
/// Genders are left unassigned.
Population init_population(const EvolutionConfig& config, RandomSource& rng);

/// Male iff a fresh uniform draw p in [0, 1) satisfies p < p_g.
void assign_genders(Population& pop, double p_g, RandomSource& rng);

}  // namespace gga
