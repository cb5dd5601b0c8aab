#include "gga/learning.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "gga/errors.hpp"

namespace gga {

namespace {

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw EvaluationError(std::string(what) + ": non-finite objective value");
  return v;
}

double step_for(double xk, double h) { return h * std::max(1.0, std::abs(xk)); }

}  // namespace

NewtonResult newton_step(const RealVector& x, const DerivativeBundle& d) {
  const auto n = x.size();
  if (d.gradient.size() != n || d.hessian.rows() != n || d.hessian.cols() != n)
    throw UsageError("newton_step: derivative dimensions do not match the point");
  if (!d.gradient.allFinite() || !d.hessian.allFinite())
    throw EvaluationError("newton_step: non-finite derivative entries");

  const Eigen::JacobiSVD<Matrix> svd(d.hessian);
  const auto& s = svd.singularValues();
  const double s_max = s.size() ? s(0) : 0.0;
  const double s_min = s.size() ? s(s.size() - 1) : 0.0;
  if (!(s_min > 0.0) || s_max / s_min > kMaxHessianCondition) return {x, false};

  const RealVector delta = d.hessian.fullPivLu().solve(d.gradient);
  if (!delta.allFinite()) return {x, false};
  return {x - delta, true};
}

RealVector fd_gradient(const ObjectiveSpec& f, const RealVector& x, int t, int t_max,
                       double h) {
  if (!(h > 0.0)) throw UsageError("fd_gradient: step must be positive");
  RealVector g(x.size());
  RealVector probe = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double hk = step_for(x[k], h);
    probe[k] = x[k] + hk;
    const double up = checked(f(probe, t, t_max), "fd_gradient");
    probe[k] = x[k] - hk;
    const double down = checked(f(probe, t, t_max), "fd_gradient");
    probe[k] = x[k];
    g[k] = (up - down) / (2.0 * hk);
  }
  return g;
}

Matrix fd_hessian(const ObjectiveSpec& f, const RealVector& x, int t, int t_max,
                  double h) {
  if (!(h > 0.0)) throw UsageError("fd_hessian: step must be positive");
  const auto n = x.size();
  Matrix a(n, n);
  const double f0 = checked(f(x, t, t_max), "fd_hessian");
  RealVector probe = x;
  auto eval = [&] { return checked(f(probe, t, t_max), "fd_hessian"); };
  for (Eigen::Index i = 0; i < n; ++i) {
    const double hi = step_for(x[i], h);
    probe[i] = x[i] + hi;
    const double up = eval();
    probe[i] = x[i] - hi;
    const double down = eval();
    probe[i] = x[i];
    a(i, i) = (up - 2.0 * f0 + down) / (hi * hi);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double hj = step_for(x[j], h);
      double acc = 0.0;
      for (const auto& [si, sj, w] : {std::tuple{1.0, 1.0, 1.0}, std::tuple{1.0, -1.0, -1.0},
                                      std::tuple{-1.0, 1.0, -1.0}, std::tuple{-1.0, -1.0, 1.0}}) {
        probe[i] = x[i] + si * hi;
        probe[j] = x[j] + sj * hj;
        acc += w * eval();
      }
      probe[i] = x[i];
      probe[j] = x[j];
      a(i, j) = a(j, i) = acc / (4.0 * hi * hj);
    }
  }
  return 0.5 * (a + a.transpose());
}

DerivativeBundle derivatives(const ObjectiveSpec& f, const RealVector& x, int t,
                             int t_max, double fd_step) {
  DerivativeBundle d;
  d.gradient = f.gradient ? (*f.gradient)(x, t, t_max) : fd_gradient(f, x, t, t_max, fd_step);
  d.hessian = f.hessian ? (*f.hessian)(x, t, t_max) : fd_hessian(f, x, t, t_max, fd_step);
  return d;
}

LearnOutcome learn(Individual& ind, const ObjectiveSpec& f, int t, int t_max,
                   LearningMode mode, const std::vector<Interval>& bounds,
                   double fd_step) {
  if (!ind.raw_fitness) ind.raw_fitness = checked(f(ind.genotype, t, t_max), "learn");
  const double base = *ind.raw_fitness;

  LearnOutcome out{ind.genotype, base, false};
  const NewtonResult candidate =
      newton_step(ind.genotype, derivatives(f, ind.genotype, t, t_max, fd_step));
  if (candidate.stepped && within_bounds(candidate.point, bounds)) {
    const double value = checked(f(candidate.point, t, t_max), "learn");
    if (value > base) out = {candidate.point, value, true};
  }

  ind.learned_phenotype = out.phenotype;
  ind.learned_fitness = out.fitness;
  if (mode == LearningMode::Lamarck) {
    ind.genotype = out.phenotype;
    ind.raw_fitness = out.fitness;
  }
  return out;
}

}  // namespace gga
