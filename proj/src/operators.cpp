#include "gga/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gga/errors.hpp"

namespace gga {

MutationRates mutation_rates(int t, int t_max, const MutationSchedule& sched) {
  const double tau = static_cast<double>(t) / static_cast<double>(t_max);
  return {sched.p_f0 * std::exp(-sched.a_f * tau),
          sched.p_m0 * std::exp(-sched.a_m * tau)};
}

RealVector blend(const RealVector& x, const RealVector& y,
                 std::span<const double> lambdas, CrossoverForm form) {
  if (x.size() != y.size() || static_cast<std::size_t>(x.size()) != lambdas.size())
    throw UsageError("crossover: parent dimension mismatch");
  const double sign = form == CrossoverForm::Extrapolate ? 1.0 : -1.0;
  RealVector z(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k)
    z[k] = x[k] + sign * lambdas[static_cast<std::size_t>(k)] * (x[k] - y[k]);
  return z;
}

RealVector crossover(const RealVector& x, const RealVector& y,
                     const EvolutionConfig& config, RandomSource& rng) {
  if (x.size() != y.size()) throw UsageError("crossover: parent dimension mismatch");
  std::vector<double> lambdas(static_cast<std::size_t>(x.size()));
  for (auto& l : lambdas)
    l = rng.uniform_open(config.crossover_lambda_range.lo,
                         config.crossover_lambda_range.hi);
  RealVector z = blend(x, y, lambdas, config.crossover_form);
  clamp_to_bounds(z, config.search_bounds);
  return z;
}

RealVector mutate(const RealVector& x, double sigma,
                  const std::vector<Interval>& bounds, RandomSource& rng) {
  if (!(sigma > 0.0)) throw UsageError("mutate: sigma must be positive");
  RealVector out = x;
  for (Eigen::Index k = 0; k < out.size(); ++k) out[k] += sigma * rng.normal();
  clamp_to_bounds(out, bounds);
  return out;
}

SelectionWeights male_selection_weights(std::span<const double> fitness,
                                        double window_fraction) {
  if (fitness.empty()) throw UsageError("male_selection_weights: empty fitness list");
  for (double f : fitness)
    if (!std::isfinite(f))
      throw EvaluationError("male_selection_weights: non-finite fitness");

  const auto [lo_it, hi_it] = std::minmax_element(fitness.begin(), fitness.end());
  const double f_min = *lo_it;
  const double f_max = *hi_it;

  SelectionWeights w;
  w.probabilities.assign(fitness.begin(), fitness.end());
  if (f_max == f_min) {
    std::fill(w.probabilities.begin(), w.probabilities.end(), 1.0);
  } else if (!(window_fraction == 0.0 && f_min > 0.0)) {
    const double eps = window_fraction * (f_max - f_min);
    for (auto& p : w.probabilities) p = p - f_min + eps;
  }
  const double total = std::accumulate(w.probabilities.begin(), w.probabilities.end(), 0.0);
  for (auto& p : w.probabilities) p /= total;
  return w;
}

std::size_t select_male(const SelectionWeights& weights, RandomSource& rng) {
  const auto& p = weights.probabilities;
  if (p.empty()) throw UsageError("select_male: no candidates");
  const double u = rng.uniform();
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    acc += p[i];
    last_positive = i;
    if (u < acc) return i;
  }
  // Rounding left the cumulative sum just below 1.
  return last_positive;
}

std::size_t select_female(std::size_t n, RandomSource& rng) {
  if (n == 0) throw UsageError("select_female: no candidates");
  return rng.index(n);
}

std::vector<std::size_t> elites(std::span<const double> fitness, std::size_t k) {
  std::vector<std::size_t> order(fitness.size());
  std::iota(order.begin(), order.end(), 0);
  k = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
                    order.end(), [&](std::size_t a, std::size_t b) {
                      if (fitness[a] != fitness[b]) return fitness[a] > fitness[b];
                      return a < b;
                    });
  order.resize(k);
  return order;
}

}  // namespace gga
