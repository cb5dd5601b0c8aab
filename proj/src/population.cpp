#include "gga/population.hpp"

#include <algorithm>

#include "gga/errors.hpp"

namespace gga {

double Individual::fitness() const {
  if (learned_fitness) return *learned_fitness;
  if (raw_fitness) return *raw_fitness;
  throw UsageError("Individual::fitness: individual has not been evaluated");
}

const RealVector& Individual::phenotype() const {
  return learned_phenotype ? *learned_phenotype : genotype;
}

std::size_t Population::male_count() const {
  return static_cast<std::size_t>(
      std::count_if(members.begin(), members.end(),
                    [](const Individual& i) { return i.gender == Gender::Male; }));
}

Population init_population(const EvolutionConfig& config, RandomSource& rng) {
  config.validate();
  Population pop;
  pop.members.reserve(static_cast<std::size_t>(config.population_size));
  for (int i = 0; i < config.population_size; ++i) {
    Individual ind;
    ind.genotype.resize(config.dimension);
    for (int k = 0; k < config.dimension; ++k) {
      const auto& b = config.search_bounds[static_cast<std::size_t>(k)];
      // lo + (hi - lo) * u can round up to hi; keep it inside the box.
      ind.genotype[k] = std::min(b.lo + (b.hi - b.lo) * rng.uniform(), b.hi);
    }
    pop.members.push_back(std::move(ind));
  }
  return pop;
}

void assign_genders(Population& pop, double p_g, RandomSource& rng) {
  if (!(p_g >= 0.0 && p_g <= 1.0))
    throw UsageError("assign_genders: p_g must lie in [0, 1]");
  for (auto& ind : pop.members)
    ind.gender = rng.uniform() < p_g ? Gender::Male : Gender::Female;
}

}  // namespace gga
