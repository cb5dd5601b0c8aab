#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace gga {

using RealVector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class Variant { GA, GGA, BGGA, LGGA };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view name);

/// Where the learning pass takes its input genotypes from.
enum class LearnSource { PreMutation, PostMutation };

std::string_view to_string(LearnSource s);
LearnSource parse_learn_source(std::string_view name);

/// Offspring rule. Extrapolate is z = x + l(x - y); Convex is z = x - l(x - y).
enum class CrossoverForm { Extrapolate, Convex };

std::string_view to_string(CrossoverForm f);
CrossoverForm parse_crossover_form(std::string_view name);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

struct MutationSchedule {
  double p_f0 = 0.37;
  double p_m0 = 0.36;
  double a_f = 4.55;
  double a_m = 3.57;
};

struct EvolutionConfig {
  Variant variant = Variant::BGGA;
  int population_size = 100;
  int max_generation = 15;
  int dimension = 2;
  /// One interval per coordinate.
  std::vector<Interval> search_bounds =
      std::vector<Interval>(2, Interval{-5.12, 5.12});
  double gender_probability = 0.5;
  MutationSchedule mutation_schedule{};
  double mutation_sigma = 0.05;
  Interval crossover_lambda_range{0.0, 1.0};
  CrossoverForm crossover_form = CrossoverForm::Convex;
  int elitism_count = 1;
  double selection_window_fraction = 0.1;
  bool learning_enabled = true;
  LearnSource learn_source = LearnSource::PostMutation;
  /// Relative finite-difference step, used when the objective has no
  /// analytic derivatives: h_k = fd_step * max(1, |x_k|).
  double fd_step = 1e-5;
  std::uint64_t seed = 1;

  bool gendered() const { return variant != Variant::GA; }
  bool learns() const {
    return learning_enabled &&
           (variant == Variant::BGGA || variant == Variant::LGGA);
  }

  /// Throws ConfigError on the first violated invariant.
  void validate() const;

  RealVector lower() const;
  RealVector upper() const;
};

/// Clamp every coordinate of `x` into the configured search box.
void clamp_to_bounds(RealVector& x, const std::vector<Interval>& bounds);
bool within_bounds(const RealVector& x, const std::vector<Interval>& bounds);

}  // namespace gga
