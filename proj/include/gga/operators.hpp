#pragma once

#include <span>
#include <vector>

#include "gga/config.hpp"
#include "gga/random.hpp"

namespace gga {

struct MutationRates {
  double p_f = 0.0;
  double p_m = 0.0;
};

/// p = p0 * exp(-a * t / t_max), separately for females and males.
MutationRates mutation_rates(int t, int t_max, const MutationSchedule& sched);

/// Offspring coordinates before clamping, one lambda per gene:
///   Extrapolate: z_k = x_k + l_k (x_k - y_k)
///   Convex:      z_k = x_k - l_k (x_k - y_k)
RealVector blend(const RealVector& x, const RealVector& y,
                 std::span<const double> lambdas,
                 CrossoverForm form = CrossoverForm::Extrapolate);

/// Crossover of male parent `x` with female parent `y`. Draws a fresh lambda
/// per gene from the configured open interval and clamps to the search box.
RealVector crossover(const RealVector& x, const RealVector& y,
                     const EvolutionConfig& config, RandomSource& rng);

/// x + r with r_k ~ N(0, sigma^2) on every coordinate, clamped to `bounds`.
RealVector mutate(const RealVector& x, double sigma,
                  const std::vector<Interval>& bounds, RandomSource& rng);

/// Normalized selection probabilities, one per entry of `fitness`.
struct SelectionWeights {
  std::vector<double> probabilities;
};

/// Proportional selection weights. Raw f_i / sum f when window_fraction is
/// zero and every f_i > 0; otherwise the windowed shift
///   w_i = f_i - f_min + window_fraction * (f_max - f_min),
/// with uniform weights when f_max == f_min.
SelectionWeights male_selection_weights(std::span<const double> fitness,
                                        double window_fraction);

/// Roulette draw: index i with probability weights[i].
std::size_t select_male(const SelectionWeights& weights, RandomSource& rng);

/// Uniform index in [0, n).
std::size_t select_female(std::size_t n, RandomSource& rng);

/// Indices of the k fittest entries, best first; ties go to the lower index.
std::vector<std::size_t> elites(std::span<const double> fitness, std::size_t k);

}  // namespace gga
