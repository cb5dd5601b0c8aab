#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gga/config.hpp"
#include "gga/engine.hpp"
#include "gga/objectives.hpp"

namespace gga {

enum class ChaseLabel { PerturbationPeak, RastriginPeak, Neither };

std::string_view to_string(ChaseLabel label);

struct ChaseSpec {
  RealVector perturbation_center = RealVector::Unit(2, 1);
  RealVector rastrigin_center = RealVector::Zero(2);
  double radius = 0.25;
};

/// Ball membership around the two peaks; the nearer center wins when both
/// balls contain the point, ties going to the perturbation peak.
ChaseLabel classify_chase(const RealVector& best_point, const ChaseSpec& chase);

struct EnsembleOptions {
  int n_runs = 500;
  std::uint64_t base_seed = 1;
  int jobs = 1;
  /// When set, every (run, generation) best point is labelled.
  std::optional<ChaseSpec> chase;
};

struct EnsembleResult {
  int n_runs = 0;
  std::uint64_t base_seed = 0;
  Variant variant = Variant::BGGA;
  /// Indexed by generation 0..t_max.
  std::vector<double> mean_best_fitness;
  std::vector<double> stderr_best_fitness;
  std::vector<RealVector> mean_best_point;
  /// Indexed by run.
  std::vector<double> final_best_fitness;
  std::vector<RealVector> final_best_point;
  /// labels[run][generation]; empty unless a ChaseSpec was given.
  std::vector<std::vector<ChaseLabel>> labels;

  double final_mean() const { return mean_best_fitness.back(); }
  double final_stderr() const { return stderr_best_fitness.back(); }
  /// Final-generation labels, one per run.
  std::vector<ChaseLabel> final_labels() const;
};

struct MeanStderr {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Mean and sample standard deviation / sqrt(n), two-pass, in index order.
MeanStderr mean_stderr(std::span<const double> values);

/// n_runs independent evolve() calls on streams RandomSource::for_run(base_seed, k).
/// Aggregation is by run index, so `jobs` never changes the result.
EnsembleResult run_ensemble(const EvolutionConfig& config, const ObjectiveSpec& objective,
                            const EnsembleOptions& options);

/// One-sided z statistic for mean(a) > mean(b).
double z_statistic(const MeanStderr& a, const MeanStderr& b);
/// 99% one-sided critical value of the standard normal.
inline constexpr double kZ99 = 2.3263478740408408;

struct BifurcationReport {
  std::vector<double> lambda_grid;
  std::vector<double> switch_fraction;
  std::vector<int> n_runs;
  /// Smallest grid value with switch_fraction > 0.5.
  std::optional<double> bifurcation_lambda;
  std::vector<EnsembleResult> ensembles;

  /// Binomial standard error of switch_fraction[i].
  double standard_error(std::size_t i) const;
};

/// For each decay rate in `lambda_grid` (ascending), runs an ensemble on the
/// perturbed Rastrigin landscape built from `base` with that decay, labels the
/// final best points and records the fraction that ended on the Rastrigin peak.
/// Every grid point uses the same base seed.
BifurcationReport bifurcation_sweep(const EvolutionConfig& config,
                                    const PerturbationParams& base,
                                    std::span<const double> lambda_grid,
                                    EnsembleOptions options);

/// True when no switch fraction drops below its predecessor by more than
/// `n_sigma` combined standard errors.
bool switch_fraction_non_decreasing(const BifurcationReport& report, double n_sigma = 2.0);

struct PairwiseTest {
  Variant a;
  Variant b;
  double z = 0.0;
  /// mean(a) > mean(b) at the 99% one-sided level.
  bool a_greater = false;
};

struct ComparisonTable {
  std::vector<EnsembleResult> rows;
  std::vector<PairwiseTest> tests;
};

/// One ensemble per variant under identical budget and seeds, plus every
/// ordered pairwise one-sided test on mean final best fitness.
ComparisonTable compare_variants(const ObjectiveSpec& objective,
                                 std::span<const Variant> variants,
                                 const EvolutionConfig& shared, const EnsembleOptions& options);

struct MetaBox {
  Interval p_f0{0.0, 1.0};
  Interval p_m0{0.0, 1.0};
  Interval a_f{0.01, 10.0};
  Interval a_m{0.01, 10.0};
};

struct MetaConfig {
  MetaBox box;
  int population_size = 20;
  int generations = 10;
  double mutation_sigma = 0.1;
  /// Inner GGA ensemble size per meta-fitness evaluation.
  int inner_runs = 20;
  int jobs = 1;
};

struct MetaResult {
  MutationSchedule best;
  /// Inner performance of `best` as seen by the outer search.
  MeanStderr inner;
  RunHistory outer_history;
};

/// Inner performance of a schedule: mean final best fitness of a GGA ensemble
/// on static Rastrigin.
MeanStderr evaluate_schedule(const EvolutionConfig& inner_template,
                             const MutationSchedule& schedule, int n_runs,
                             std::uint64_t base_seed, int jobs = 1);

/// Outer GGA over (p_f0, p_m0, a_f, a_m), searched in the unit cube and mapped
/// affinely onto `meta.box`. Meta-fitness is evaluate_schedule() with a fixed
/// inner seed, so the meta-landscape is deterministic.
MetaResult meta_optimize(const EvolutionConfig& inner_template, const MetaConfig& meta,
                         std::uint64_t base_seed);

}  // namespace gga
