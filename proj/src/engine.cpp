#include "gga/engine.hpp"

#include <cmath>
#include <numeric>

#include "gga/config_json.hpp"
#include "gga/errors.hpp"

namespace gga {

LearningMode learning_mode(Variant v) {
  return v == Variant::LGGA ? LearningMode::Lamarck : LearningMode::Baldwin;
}

namespace {

void mutation_pass(Population& pop, const MutationRates& rates,
                   const EvolutionConfig& config, RandomSource& rng) {
  for (auto& ind : pop.members) {
    if (ind.elite) continue;
    const double p = config.gendered() && ind.gender == Gender::Male ? rates.p_m : rates.p_f;
    if (rng.uniform() < p)
      ind.genotype = mutate(ind.genotype, config.mutation_sigma, config.search_bounds, rng);
  }
}

void evaluate_one(Individual& ind, const RealVector* learn_from, const ObjectiveSpec& objective,
                  int t, const EvolutionConfig& config) {
  const int t_max = config.max_generation;
  ind.raw_fitness.reset();
  ind.learned_fitness.reset();
  ind.learned_phenotype.reset();

  if (!config.learns()) {
    const double v = objective(ind.genotype, t, t_max);
    if (!std::isfinite(v)) throw EvaluationError("non-finite objective value");
    ind.raw_fitness = v;
    return;
  }

  const LearningMode mode = learning_mode(config.variant);
  if (learn_from == nullptr) {
    learn(ind, objective, t, t_max, mode, config.search_bounds, config.fd_step);
    return;
  }
  // Learning from the pre-mutation genotype; the cached fitness values then
  // refer to that genotype.
  Individual source;
  source.genotype = *learn_from;
  learn(source, objective, t, t_max, mode, config.search_bounds, config.fd_step);
  ind.raw_fitness = source.raw_fitness;
  ind.learned_fitness = source.learned_fitness;
  ind.learned_phenotype = source.learned_phenotype;
  if (mode == LearningMode::Lamarck) ind.genotype = source.genotype;
}

GenerationRecord summarize(const Population& pop, std::span<const double> fitness, int t,
                           const MutationRates& rates) {
  GenerationRecord rec;
  rec.t = t;
  rec.rates = rates;
  rec.male_count = pop.male_count();
  std::size_t best = 0;
  for (std::size_t i = 1; i < fitness.size(); ++i)
    if (fitness[i] > fitness[best]) best = i;
  rec.best_fitness = fitness[best];
  rec.best_point = pop.members[best].phenotype();
  rec.mean_fitness =
      std::accumulate(fitness.begin(), fitness.end(), 0.0) / static_cast<double>(fitness.size());
  return rec;
}

}  // namespace

Population reproduce(const Population& pool, std::span<const double> fitness,
                     const EvolutionConfig& config, RandomSource& rng,
                     std::size_t* fallbacks) {
  if (fitness.size() != pool.size())
    throw UsageError("reproduce: fitness list not aligned with the population");
  const auto n = static_cast<std::size_t>(config.population_size);
  const auto k = static_cast<std::size_t>(config.elitism_count);

  Population next;
  next.generation = pool.generation + 1;
  next.members.reserve(n);
  for (std::size_t idx : elites(fitness, k)) {
    Individual copy;
    copy.genotype = pool.members[idx].genotype;
    copy.elite = true;
    next.members.push_back(std::move(copy));
  }
  if (next.members.size() >= n) return next;

  const SelectionWeights whole = male_selection_weights(fitness, config.selection_window_fraction);
  std::vector<std::size_t> males, females;
  if (config.gendered()) {
    for (std::size_t i = 0; i < pool.size(); ++i)
      (pool.members[i].gender == Gender::Male ? males : females).push_back(i);
  }

  SelectionWeights male_weights;
  if (!males.empty()) {
    std::vector<double> mf;
    mf.reserve(males.size());
    for (auto i : males) mf.push_back(fitness[i]);
    male_weights = male_selection_weights(mf, config.selection_window_fraction);
  }
  if (config.gendered() && fallbacks) {
    *fallbacks += males.empty() ? 1 : 0;
    *fallbacks += females.empty() ? 1 : 0;
  }

  while (next.members.size() < n) {
    std::size_t father = 0, mother = 0;
    if (!config.gendered()) {
      father = select_male(whole, rng);
      mother = select_male(whole, rng);
    } else {
      father = males.empty() ? select_male(whole, rng) : males[select_male(male_weights, rng)];
      mother = females.empty() ? select_male(whole, rng)
                               : females[select_female(females.size(), rng)];
    }
    Individual child;
    child.genotype =
        crossover(pool.members[father].genotype, pool.members[mother].genotype, config, rng);
    next.members.push_back(std::move(child));
  }
  return next;
}

RunHistory evolve(const EvolutionConfig& config, const ObjectiveSpec& objective,
                  RandomSource& rng, const GenerationObserver& observer) {
  config.validate();
  if (objective.dimension != config.dimension)
    throw ConfigError("objective '" + objective.name + "' has dimension " +
                      std::to_string(objective.dimension) + ", configuration has " +
                      std::to_string(config.dimension));

  RunHistory history;
  history.config_digest = config_digest(config);
  history.seed = rng.seed();
  history.records.reserve(static_cast<std::size_t>(config.max_generation) + 1);

  const int t_max = config.max_generation;
  Population pop = init_population(config, rng);
  std::vector<double> fitness(pop.size());
  std::vector<RealVector> pre_mutation;

  for (int t = 0; t <= t_max; ++t) {
    pop.generation = t;
    if (config.gendered()) assign_genders(pop, config.gender_probability, rng);
    const MutationRates rates = mutation_rates(t, t_max, config.mutation_schedule);

    const bool learn_pre = config.learns() && config.learn_source == LearnSource::PreMutation;
    if (learn_pre) {
      pre_mutation.clear();
      for (const auto& ind : pop.members) pre_mutation.push_back(ind.genotype);
    }
    if (t < t_max) mutation_pass(pop, rates, config, rng);

    for (std::size_t i = 0; i < pop.size(); ++i) {
      try {
        evaluate_one(pop.members[i], learn_pre ? &pre_mutation[i] : nullptr, objective, t, config);
      } catch (const EvaluationError& e) {
        throw EvaluationError("generation " + std::to_string(t) + ", individual " +
                              std::to_string(i) + ": " + e.what());
      }
      fitness[i] = pop.members[i].fitness();
    }

    history.records.push_back(summarize(pop, fitness, t, rates));
    if (observer) observer(pop, history.records.back());
    if (t == t_max) break;
    pop = reproduce(pop, fitness, config, rng, &history.fallback_events);
  }

  history.final_population = std::move(pop);
  return history;
}

}  // namespace gga
