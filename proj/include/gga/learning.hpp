#pragma once

#include "gga/config.hpp"
#include "gga/objectives.hpp"
#include "gga/population.hpp"

namespace gga {

enum class LearningMode { Baldwin, Lamarck };

struct DerivativeBundle {
  RealVector gradient;
  Matrix hessian;
};

struct NewtonResult {
  RealVector point;
  bool stepped = false;
};

/// Condition number above which the Hessian is treated as singular.
inline constexpr double kMaxHessianCondition = 1e12;

/// One Newton-Raphson step x' = x - H^{-1} grad f(x), solved as a linear
/// system. Singular or ill-conditioned H returns x with stepped = false.
/// Throws EvaluationError on non-finite derivative entries.
NewtonResult newton_step(const RealVector& x, const DerivativeBundle& d);

/// Central differences with per-coordinate step h * max(1, |x_k|).
RealVector fd_gradient(const ObjectiveSpec& f, const RealVector& x, int t, int t_max,
                       double h = 1e-5);
/// Central second differences, same step rule, symmetrized (A + A^T) / 2.
Matrix fd_hessian(const ObjectiveSpec& f, const RealVector& x, int t, int t_max,
                  double h = 1e-5);

/// Analytic derivatives when the objective provides them, finite differences
/// otherwise.
DerivativeBundle derivatives(const ObjectiveSpec& f, const RealVector& x, int t,
                             int t_max, double fd_step);

struct LearnOutcome {
  RealVector phenotype;
  double fitness = 0.0;
  bool stepped = false;
};

/// Improvement-gated one-step learning of `ind`. The Newton candidate is
/// accepted only if it lies inside `bounds` and strictly improves the
/// objective; otherwise the phenotype is the genotype itself. Baldwin mode
/// credits fitness only; Lamarck mode also writes the phenotype back into the
/// genotype. Fills raw_fitness if it is missing.
LearnOutcome learn(Individual& ind, const ObjectiveSpec& f, int t, int t_max,
                   LearningMode mode, const std::vector<Interval>& bounds,
                   double fd_step = 1e-5);

}  // namespace gga
