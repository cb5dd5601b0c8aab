#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gga/config.hpp"

namespace gga {

/// Scalar field to maximize, possibly time dependent through the generation
/// index. Derivatives are optional; learning falls back to finite
/// differences when they are absent.
struct ObjectiveSpec {
  using Value = std::function<double(const RealVector& x, int t, int t_max)>;
  using Gradient = std::function<RealVector(const RealVector& x, int t, int t_max)>;
  using Hessian = std::function<Matrix(const RealVector& x, int t, int t_max)>;

  std::string name;
  nlohmann::json params = nlohmann::json::object();
  int dimension = 2;
  Value evaluate;
  std::optional<Gradient> gradient;
  std::optional<Hessian> hessian;

  double operator()(const RealVector& x, int t, int t_max) const {
    return evaluate(x, t, t_max);
  }
};

/// Negated Rastrigin, f(x, y) = -[20 + x^2 + y^2 - 10(cos 2 pi x + cos 2 pi y)].
/// Maximum 0 at the origin.
double rastrigin(const RealVector& x);
RealVector rastrigin_grad(const RealVector& x);
Matrix rastrigin_hess(const RealVector& x);

struct PerturbationParams {
  double amplitude = 2.0;
  double decay = 0.5;
  double sigma2 = 1.0 / 40.0;
  RealVector center = RealVector::Unit(2, 1);
};

/// Radial Gaussian bump whose height decays in time:
///   A0 exp(-decay t / t_max) exp(-|x - center|^2 / (2 sigma2)).
double perturbation(const RealVector& x, int t, int t_max, const PerturbationParams& p);
RealVector perturbation_grad(const RealVector& x, int t, int t_max,
                             const PerturbationParams& p);
Matrix perturbation_hess(const RealVector& x, int t, int t_max,
                         const PerturbationParams& p);

/// Rastrigin plus the decaying perturbation, with analytic derivatives.
ObjectiveSpec dynamic_objective(const PerturbationParams& p);
/// Time-invariant Rastrigin with analytic derivatives.
ObjectiveSpec static_rastrigin();
/// Concave quadratic f(x) = offset - (x - m)^T A (x - m), A symmetric.
ObjectiveSpec concave_quadratic(const RealVector& optimum, const Matrix& curvature,
                                double offset = 0.0);

/// Name -> constructor table so configurations can select objectives by string.
class ObjectiveRegistry {
 public:
  using Factory = std::function<ObjectiveSpec(const nlohmann::json& params)>;

  /// Registry preloaded with "rastrigin", "perturbed_rastrigin", "quadratic".
  static ObjectiveRegistry& instance();

  void add(const std::string& name, Factory factory);
  ObjectiveSpec make(const std::string& name, const nlohmann::json& params) const;
  std::vector<std::string> names() const;

 private:
  ObjectiveRegistry();
  std::vector<std::pair<std::string, Factory>> factories_;
};

PerturbationParams perturbation_from_json(const nlohmann::json& params);
nlohmann::json to_json(const PerturbationParams& p);

}  // namespace gga
