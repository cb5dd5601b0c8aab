#include "gga/config.hpp"

#include <algorithm>
#include <cmath>

#include "gga/errors.hpp"

namespace gga {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::GA: return "GA";
    case Variant::GGA: return "GGA";
    case Variant::BGGA: return "BGGA";
    case Variant::LGGA: return "LGGA";
  }
  return "?";
}

Variant parse_variant(std::string_view name) {
  if (name == "GA") return Variant::GA;
  if (name == "GGA") return Variant::GGA;
  if (name == "BGGA") return Variant::BGGA;
  if (name == "LGGA") return Variant::LGGA;
  throw ConfigError("unknown variant '" + std::string(name) +
                    "' (expected GA, GGA, BGGA or LGGA)");
}

std::string_view to_string(LearnSource s) {
  return s == LearnSource::PreMutation ? "pre_mutation" : "post_mutation";
}

LearnSource parse_learn_source(std::string_view name) {
  if (name == "pre_mutation") return LearnSource::PreMutation;
  if (name == "post_mutation") return LearnSource::PostMutation;
  throw ConfigError("unknown learn_source '" + std::string(name) + "'");
}

std::string_view to_string(CrossoverForm f) {
  return f == CrossoverForm::Extrapolate ? "extrapolate" : "convex";
}

CrossoverForm parse_crossover_form(std::string_view name) {
  if (name == "extrapolate") return CrossoverForm::Extrapolate;
  if (name == "convex") return CrossoverForm::Convex;
  throw ConfigError("unknown crossover form '" + std::string(name) + "'");
}

namespace {

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

}  // namespace

void EvolutionConfig::validate() const {
  if (population_size <= 0) throw ConfigError("population_size must be positive");
  if (max_generation <= 0) throw ConfigError("max_generation must be positive");
  if (dimension <= 0) throw ConfigError("dimension must be positive");
  if (static_cast<int>(search_bounds.size()) != dimension)
    throw ConfigError("search_bounds has " + std::to_string(search_bounds.size()) +
                      " intervals, dimension is " + std::to_string(dimension));
  for (std::size_t k = 0; k < search_bounds.size(); ++k) {
    const auto& b = search_bounds[k];
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !(b.lo < b.hi))
      throw ConfigError("search_bounds[" + std::to_string(k) +
                        "]: need finite lo < hi");
  }
  if (!is_probability(gender_probability))
    throw ConfigError("gender_probability must lie in [0, 1]");
  const auto& s = mutation_schedule;
  if (!is_probability(s.p_f0) || !is_probability(s.p_m0))
    throw ConfigError("p_f0 and p_m0 must lie in [0, 1]");
  if (!(s.a_f > 0.0) || !(s.a_m > 0.0) || !std::isfinite(s.a_f) ||
      !std::isfinite(s.a_m))
    throw ConfigError("a_f and a_m must be positive");
  if (!(mutation_sigma > 0.0) || !std::isfinite(mutation_sigma))
    throw ConfigError("mutation_sigma must be positive");
  const auto& lr = crossover_lambda_range;
  if (!(lr.lo >= 0.0 && lr.lo < lr.hi && lr.hi <= 1.0))
    throw ConfigError("crossover_lambda_range must be a non-empty sub-interval of (0, 1)");
  if (elitism_count < 0 || elitism_count >= population_size)
    throw ConfigError("elitism_count must satisfy 0 <= k < population_size");
  if (!(selection_window_fraction >= 0.0) || !std::isfinite(selection_window_fraction))
    throw ConfigError("selection_window_fraction must be nonnegative");
  if (!(fd_step > 0.0)) throw ConfigError("fd_step must be positive");
}

RealVector EvolutionConfig::lower() const {
  RealVector v(static_cast<Eigen::Index>(search_bounds.size()));
  for (std::size_t k = 0; k < search_bounds.size(); ++k) v[k] = search_bounds[k].lo;
  return v;
}

RealVector EvolutionConfig::upper() const {
  RealVector v(static_cast<Eigen::Index>(search_bounds.size()));
  for (std::size_t k = 0; k < search_bounds.size(); ++k) v[k] = search_bounds[k].hi;
  return v;
}

void clamp_to_bounds(RealVector& x, const std::vector<Interval>& bounds) {
  for (Eigen::Index k = 0; k < x.size(); ++k)
    x[k] = std::clamp(x[k], bounds[k].lo, bounds[k].hi);
}

bool within_bounds(const RealVector& x, const std::vector<Interval>& bounds) {
  for (Eigen::Index k = 0; k < x.size(); ++k)
    if (!(x[k] >= bounds[k].lo && x[k] <= bounds[k].hi)) return false;
  return true;
}

}  // namespace gga
