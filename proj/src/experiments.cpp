#include "gga/experiments.hpp"

#include <cmath>

#include "gga/errors.hpp"
#include "gga/parallel.hpp"

namespace gga {

std::string_view to_string(ChaseLabel label) {
  switch (label) {
    case ChaseLabel::PerturbationPeak: return "PerturbationPeak";
    case ChaseLabel::RastriginPeak: return "RastriginPeak";
    case ChaseLabel::Neither: return "Neither";
  }
  return "?";
}

ChaseLabel classify_chase(const RealVector& best_point, const ChaseSpec& chase) {
  if (!(chase.radius > 0.0)) throw UsageError("classify_chase: radius must be positive");
  const double d_pert = (best_point - chase.perturbation_center).norm();
  const double d_rast = (best_point - chase.rastrigin_center).norm();
  const bool in_pert = d_pert <= chase.radius;
  const bool in_rast = d_rast <= chase.radius;
  if (in_pert && in_rast) return d_rast < d_pert ? ChaseLabel::RastriginPeak
                                                 : ChaseLabel::PerturbationPeak;
  if (in_pert) return ChaseLabel::PerturbationPeak;
  if (in_rast) return ChaseLabel::RastriginPeak;
  return ChaseLabel::Neither;
}

std::vector<ChaseLabel> EnsembleResult::final_labels() const {
  std::vector<ChaseLabel> out;
  out.reserve(labels.size());
  for (const auto& run : labels) out.push_back(run.back());
  return out;
}

MeanStderr mean_stderr(std::span<const double> values) {
  if (values.empty()) throw UsageError("mean_stderr: no values");
  const auto n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  if (values.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

EnsembleResult run_ensemble(const EvolutionConfig& config, const ObjectiveSpec& objective,
                            const EnsembleOptions& options) {
  if (options.n_runs < 1) throw UsageError("run_ensemble: n_runs must be at least 1");
  config.validate();
  const auto n_runs = static_cast<std::size_t>(options.n_runs);

  std::vector<RunHistory> runs(n_runs);
  parallel_for(n_runs, options.jobs, [&](std::size_t k) {
    RandomSource rng = RandomSource::for_run(options.base_seed, k);
    try {
      runs[k] = evolve(config, objective, rng);
    } catch (const EvaluationError& e) {
      throw EvaluationError("run " + std::to_string(k) + " (seed " +
                            std::to_string(rng.seed()) + "): " + e.what());
    }
    runs[k].final_population = {};
  });

  EnsembleResult out;
  out.n_runs = options.n_runs;
  out.base_seed = options.base_seed;
  out.variant = config.variant;
  const std::size_t generations = runs.front().records.size();
  std::vector<double> column(n_runs);
  for (std::size_t t = 0; t < generations; ++t) {
    RealVector point_sum = RealVector::Zero(config.dimension);
    for (std::size_t k = 0; k < n_runs; ++k) {
      column[k] = runs[k].records[t].best_fitness;
      point_sum += runs[k].records[t].best_point;
    }
    const MeanStderr ms = mean_stderr(column);
    out.mean_best_fitness.push_back(ms.mean);
    out.stderr_best_fitness.push_back(ms.std_error);
    out.mean_best_point.push_back(point_sum / static_cast<double>(n_runs));
  }
  for (const auto& run : runs) {
    out.final_best_fitness.push_back(run.records.back().best_fitness);
    out.final_best_point.push_back(run.records.back().best_point);
    if (options.chase) {
      std::vector<ChaseLabel> row;
      row.reserve(run.records.size());
      for (const auto& rec : run.records) row.push_back(classify_chase(rec.best_point, *options.chase));
      out.labels.push_back(std::move(row));
    }
  }
  return out;
}

double z_statistic(const MeanStderr& a, const MeanStderr& b) {
  const double diff = a.mean - b.mean;
  const double se = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
  if (se == 0.0) {
    if (diff == 0.0) return 0.0;
    return diff > 0.0 ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
  }
  return diff / se;
}

double BifurcationReport::standard_error(std::size_t i) const {
  const double p = switch_fraction.at(i);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n_runs.at(i)));
}

BifurcationReport bifurcation_sweep(const EvolutionConfig& config,
                                    const PerturbationParams& base,
                                    std::span<const double> lambda_grid,
                                    EnsembleOptions options) {
  if (lambda_grid.empty()) throw UsageError("bifurcation_sweep: empty lambda grid");
  for (std::size_t i = 1; i < lambda_grid.size(); ++i)
    if (!(lambda_grid[i - 1] < lambda_grid[i]))
      throw UsageError("bifurcation_sweep: lambda grid must be strictly ascending");
  if (!options.chase) {
    options.chase = ChaseSpec{};
    options.chase->perturbation_center = base.center;
  }

  BifurcationReport report;
  for (double lambda : lambda_grid) {
    PerturbationParams p = base;
    p.decay = lambda;
    EnsembleResult ens = run_ensemble(config, dynamic_objective(p), options);
    std::size_t switched = 0;
    for (ChaseLabel l : ens.final_labels()) switched += l == ChaseLabel::RastriginPeak ? 1 : 0;
    const double fraction = static_cast<double>(switched) / static_cast<double>(ens.n_runs);
    report.lambda_grid.push_back(lambda);
    report.switch_fraction.push_back(fraction);
    report.n_runs.push_back(ens.n_runs);
    if (!report.bifurcation_lambda && fraction > 0.5) report.bifurcation_lambda = lambda;
    report.ensembles.push_back(std::move(ens));
  }
  return report;
}

bool switch_fraction_non_decreasing(const BifurcationReport& report, double n_sigma) {
  for (std::size_t i = 1; i < report.switch_fraction.size(); ++i) {
    const double se = std::hypot(report.standard_error(i - 1), report.standard_error(i));
    if (report.switch_fraction[i] < report.switch_fraction[i - 1] - n_sigma * se) return false;
  }
  return true;
}

ComparisonTable compare_variants(const ObjectiveSpec& objective,
                                 std::span<const Variant> variants,
                                 const EvolutionConfig& shared, const EnsembleOptions& options) {
  ComparisonTable table;
  for (Variant v : variants) {
    EvolutionConfig c = shared;
    c.variant = v;
    table.rows.push_back(run_ensemble(c, objective, options));
  }
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (std::size_t j = 0; j < table.rows.size(); ++j) {
      if (i == j) continue;
      const auto& a = table.rows[i];
      const auto& b = table.rows[j];
      const double z = z_statistic({a.final_mean(), a.final_stderr()},
                                   {b.final_mean(), b.final_stderr()});
      table.tests.push_back({a.variant, b.variant, z, z > kZ99});
    }
  }
  return table;
}

MeanStderr evaluate_schedule(const EvolutionConfig& inner_template,
                             const MutationSchedule& schedule, int n_runs,
                             std::uint64_t base_seed, int jobs) {
  EvolutionConfig inner = inner_template;
  inner.variant = Variant::GGA;
  inner.mutation_schedule = schedule;
  EnsembleOptions opts;
  opts.n_runs = n_runs;
  opts.base_seed = base_seed;
  opts.jobs = jobs;
  const EnsembleResult ens = run_ensemble(inner, static_rastrigin(), opts);
  return {ens.final_mean(), ens.final_stderr()};
}

namespace {

void check_box_interval(const Interval& iv, double min_lo, bool open_lo, const char* name) {
  const bool lo_ok = open_lo ? iv.lo > min_lo : iv.lo >= min_lo;
  if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !lo_ok || iv.lo > iv.hi)
    throw ConfigError(std::string("meta box '") + name + "' is invalid");
}

double map_unit(double u, const Interval& iv) { return iv.lo + u * (iv.hi - iv.lo); }

MutationSchedule schedule_from_unit(const RealVector& u, const MetaBox& box) {
  return {map_unit(u[0], box.p_f0), map_unit(u[1], box.p_m0), map_unit(u[2], box.a_f),
          map_unit(u[3], box.a_m)};
}

}  // namespace

MetaResult meta_optimize(const EvolutionConfig& inner_template, const MetaConfig& meta,
                         std::uint64_t base_seed) {
  check_box_interval(meta.box.p_f0, 0.0, false, "p_f0");
  check_box_interval(meta.box.p_m0, 0.0, false, "p_m0");
  check_box_interval(meta.box.a_f, 0.0, true, "a_f");
  check_box_interval(meta.box.a_m, 0.0, true, "a_m");
  if (meta.box.p_f0.hi > 1.0 || meta.box.p_m0.hi > 1.0)
    throw ConfigError("meta box: initial mutation frequencies must not exceed 1");
  if (meta.inner_runs < 1) throw ConfigError("meta: inner_runs must be at least 1");

  const std::uint64_t inner_seed = splitmix64(base_seed ^ 0x6d657461ULL);

  EvolutionConfig outer;
  outer.variant = Variant::GGA;
  outer.dimension = 4;
  outer.search_bounds.assign(4, Interval{0.0, 1.0});
  outer.population_size = meta.population_size;
  outer.max_generation = meta.generations;
  outer.mutation_sigma = meta.mutation_sigma;
  outer.learning_enabled = false;
  outer.seed = base_seed;
  outer.validate();

  ObjectiveSpec meta_objective;
  meta_objective.name = "meta_schedule";
  meta_objective.dimension = 4;
  meta_objective.evaluate = [&](const RealVector& u, int, int) {
    return evaluate_schedule(inner_template, schedule_from_unit(u, meta.box), meta.inner_runs,
                             inner_seed, meta.jobs)
        .mean;
  };

  RandomSource rng(splitmix64(base_seed));
  MetaResult result;
  result.outer_history = evolve(outer, meta_objective, rng);

  const auto& records = result.outer_history.records;
  std::size_t best = 0;
  for (std::size_t i = 1; i < records.size(); ++i)
    if (records[i].best_fitness > records[best].best_fitness) best = i;
  result.best = schedule_from_unit(records[best].best_point, meta.box);
  result.inner = evaluate_schedule(inner_template, result.best, meta.inner_runs, inner_seed,
                                   meta.jobs);
  return result;
}

}  // namespace gga
