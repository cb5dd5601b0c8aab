#include "gga/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gga/errors.hpp"

namespace gga {

namespace {

constexpr double kPi = std::numbers::pi;

void require_dim2(const RealVector& x, const char* who) {
  if (x.size() != 2) throw UsageError(std::string(who) + ": expects a 2-vector");
}

double time_factor(int t, int t_max, double decay) {
  return std::exp(-decay * static_cast<double>(t) / static_cast<double>(t_max));
}

void reject_unknown_keys(const nlohmann::json& params,
                         std::initializer_list<const char*> allowed,
                         const std::string& where) {
  if (!params.is_object()) throw ConfigError(where + ": parameters must be an object");
  for (const auto& [key, _] : params.items()) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* a) { return key == a; }) == allowed.end())
      throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

RealVector vector_from_json(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) throw ConfigError(what + " must be an array of numbers");
  RealVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number()) throw ConfigError(what + " must be an array of numbers");
    v[static_cast<Eigen::Index>(k)] = j[k].get<double>();
  }
  return v;
}

}  // namespace

double rastrigin(const RealVector& x) {
  require_dim2(x, "rastrigin");
  return -(20.0 + x[0] * x[0] + x[1] * x[1] -
           10.0 * (std::cos(2.0 * kPi * x[0]) + std::cos(2.0 * kPi * x[1])));
}

RealVector rastrigin_grad(const RealVector& x) {
  require_dim2(x, "rastrigin_grad");
  RealVector g(2);
  for (int k = 0; k < 2; ++k) g[k] = -(2.0 * x[k] + 20.0 * kPi * std::sin(2.0 * kPi * x[k]));
  return g;
}

Matrix rastrigin_hess(const RealVector& x) {
  require_dim2(x, "rastrigin_hess");
  Matrix h = Matrix::Zero(2, 2);
  for (int k = 0; k < 2; ++k)
    h(k, k) = -(2.0 + 40.0 * kPi * kPi * std::cos(2.0 * kPi * x[k]));
  return h;
}

double perturbation(const RealVector& x, int t, int t_max, const PerturbationParams& p) {
  const double r2 = (x - p.center).squaredNorm();
  return p.amplitude * time_factor(t, t_max, p.decay) * std::exp(-r2 / (2.0 * p.sigma2));
}

RealVector perturbation_grad(const RealVector& x, int t, int t_max,
                             const PerturbationParams& p) {
  const double g = perturbation(x, t, t_max, p);
  return -(g / p.sigma2) * (x - p.center);
}

Matrix perturbation_hess(const RealVector& x, int t, int t_max,
                         const PerturbationParams& p) {
  const double g = perturbation(x, t, t_max, p);
  const RealVector r = x - p.center;
  const auto n = x.size();
  return g * (r * r.transpose() / (p.sigma2 * p.sigma2) -
              Matrix::Identity(n, n) / p.sigma2);
}

ObjectiveSpec static_rastrigin() {
  ObjectiveSpec o;
  o.name = "rastrigin";
  o.dimension = 2;
  o.evaluate = [](const RealVector& x, int, int) { return rastrigin(x); };
  o.gradient = [](const RealVector& x, int, int) { return rastrigin_grad(x); };
  o.hessian = [](const RealVector& x, int, int) { return rastrigin_hess(x); };
  return o;
}

ObjectiveSpec dynamic_objective(const PerturbationParams& p) {
  if (!(p.sigma2 > 0.0)) throw ConfigError("perturbation sigma2 must be positive");
  if (!(p.decay >= 0.0)) throw ConfigError("perturbation decay must be nonnegative");
  if (p.center.size() != 2) throw ConfigError("perturbation center must be a 2-vector");
  ObjectiveSpec o;
  o.name = "perturbed_rastrigin";
  o.params = to_json(p);
  o.dimension = 2;
  o.evaluate = [p](const RealVector& x, int t, int t_max) {
    return rastrigin(x) + perturbation(x, t, t_max, p);
  };
  o.gradient = [p](const RealVector& x, int t, int t_max) -> RealVector {
    return rastrigin_grad(x) + perturbation_grad(x, t, t_max, p);
  };
  o.hessian = [p](const RealVector& x, int t, int t_max) -> Matrix {
    return rastrigin_hess(x) + perturbation_hess(x, t, t_max, p);
  };
  return o;
}

ObjectiveSpec concave_quadratic(const RealVector& optimum, const Matrix& curvature,
                                double offset) {
  const auto n = optimum.size();
  if (curvature.rows() != n || curvature.cols() != n)
    throw ConfigError("quadratic: curvature must be n x n");
  const Matrix a = 0.5 * (curvature + curvature.transpose());
  ObjectiveSpec o;
  o.name = "quadratic";
  o.dimension = static_cast<int>(n);
  o.params = {{"offset", offset},
              {"center", std::vector<double>(optimum.data(), optimum.data() + n)}};
  o.evaluate = [=](const RealVector& x, int, int) {
    const RealVector d = x - optimum;
    return offset - d.dot(a * d);
  };
  o.gradient = [=](const RealVector& x, int, int) -> RealVector {
    return -2.0 * (a * (x - optimum));
  };
  o.hessian = [=](const RealVector&, int, int) -> Matrix { return -2.0 * a; };
  return o;
}

PerturbationParams perturbation_from_json(const nlohmann::json& params) {
  reject_unknown_keys(params, {"amplitude", "decay", "sigma2", "center"},
                      "objective perturbed_rastrigin");
  PerturbationParams p;
  try {
    if (params.contains("amplitude")) p.amplitude = params.at("amplitude").get<double>();
    if (params.contains("decay")) p.decay = params.at("decay").get<double>();
    if (params.contains("sigma2")) p.sigma2 = params.at("sigma2").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("objective perturbed_rastrigin: ") + e.what());
  }
  if (params.contains("center")) p.center = vector_from_json(params.at("center"), "center");
  return p;
}

nlohmann::json to_json(const PerturbationParams& p) {
  return {{"amplitude", p.amplitude},
          {"decay", p.decay},
          {"sigma2", p.sigma2},
          {"center", std::vector<double>(p.center.data(),
                                         p.center.data() + p.center.size())}};
}

ObjectiveRegistry::ObjectiveRegistry() {
  add("rastrigin", [](const nlohmann::json& params) {
    reject_unknown_keys(params, {}, "objective rastrigin");
    return static_rastrigin();
  });
  add("perturbed_rastrigin", [](const nlohmann::json& params) {
    return dynamic_objective(perturbation_from_json(params));
  });
  add("quadratic", [](const nlohmann::json& params) {
    reject_unknown_keys(params, {"center", "curvature", "offset"}, "objective quadratic");
    if (!params.contains("center")) throw ConfigError("objective quadratic: missing center");
    const RealVector m = vector_from_json(params.at("center"), "center");
    const auto n = m.size();
    Matrix a = Matrix::Identity(n, n);
    if (params.contains("curvature")) {
      const auto& rows = params.at("curvature");
      if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n)
        throw ConfigError("objective quadratic: curvature must be n rows");
      for (Eigen::Index i = 0; i < n; ++i) a.row(i) = vector_from_json(rows[i], "curvature row");
    }
    const double offset = params.value("offset", 0.0);
    return concave_quadratic(m, a, offset);
  });
}

ObjectiveRegistry& ObjectiveRegistry::instance() {
  static ObjectiveRegistry registry;
  return registry;
}

void ObjectiveRegistry::add(const std::string& name, Factory factory) {
  auto it = std::find_if(factories_.begin(), factories_.end(),
                         [&](const auto& e) { return e.first == name; });
  if (it != factories_.end())
    it->second = std::move(factory);
  else
    factories_.emplace_back(name, std::move(factory));
}

ObjectiveSpec ObjectiveRegistry::make(const std::string& name,
                                      const nlohmann::json& params) const {
  auto it = std::find_if(factories_.begin(), factories_.end(),
                         [&](const auto& e) { return e.first == name; });
  if (it == factories_.end()) throw ConfigError("unknown objective '" + name + "'");
  return it->second(params);
}

std::vector<std::string> ObjectiveRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [n, _] : factories_) out.push_back(n);
  return out;
}

}  // namespace gga
