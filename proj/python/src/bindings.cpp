#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "gga/config_json.hpp"
#include "gga/document.hpp"
#include "gga/errors.hpp"
#include "gga/experiments.hpp"
#include "gga/learning.hpp"
#include "gga/operators.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

json to_native(const py::handle& obj) {
  if (obj.is_none()) return json::object();
  const auto dumps = py::module_::import("json").attr("dumps");
  return json::parse(dumps(obj).cast<std::string>());
}

py::object to_python(const json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

gga::Document document(const py::handle& config, std::optional<std::uint64_t> seed) {
  json j = gga::defaults_json();
  json user = to_native(config);
  if (user.contains("objective") && user["objective"].contains("name") &&
      !user["objective"].contains("params"))
    j["objective"]["params"] = json::object();
  j.merge_patch(user);
  if (seed) j["core"]["seed"] = *seed;
  return gga::document_from_json(j);
}

gga::RealVector vec(const std::vector<double>& v) {
  return Eigen::Map<const gga::RealVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> list(const gga::RealVector& v) { return {v.data(), v.data() + v.size()}; }

gga::EnsembleOptions options(const gga::Document& doc) {
  gga::EnsembleOptions o;
  o.n_runs = doc.experiment.n_runs;
  o.base_seed = doc.evolution.seed;
  o.jobs = doc.experiment.jobs;
  if (doc.objective.name == "perturbed_rastrigin") {
    gga::ChaseSpec chase;
    chase.perturbation_center = gga::perturbation_from_json(doc.objective.params).center;
    chase.radius = doc.experiment.chase_radius;
    o.chase = chase;
  }
  return o;
}

json ensemble_json(const gga::EnsembleResult& e) {
  json points = json::array();
  for (const auto& p : e.mean_best_point) points.push_back(list(p));
  json out = {{"variant", std::string(gga::to_string(e.variant))},
              {"n_runs", e.n_runs},
              {"base_seed", e.base_seed},
              {"mean_best_fitness", e.mean_best_fitness},
              {"stderr_best_fitness", e.stderr_best_fitness},
              {"mean_best_point", points},
              {"final_best_fitness", e.final_best_fitness}};
  if (!e.labels.empty()) {
    json labels = json::array();
    for (auto l : e.final_labels()) labels.push_back(std::string(gga::to_string(l)));
    out["final_labels"] = labels;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gender genetic algorithms with Baldwinian and Lamarckian learning";

  py::register_exception<gga::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<gga::EvaluationError>(m, "EvaluationError", PyExc_RuntimeError);
  py::register_exception<gga::UsageError>(m, "UsageError", PyExc_ValueError);

  m.def("defaults", [] { return to_python(gga::defaults_json()); },
        "Default configuration document.");

  m.def("rastrigin", [](const std::vector<double>& x) { return gga::rastrigin(vec(x)); },
        py::arg("x"));

  m.def("dynamic_objective",
        [](const std::vector<double>& x, int t, int t_max, const py::object& params) {
          const auto p = gga::perturbation_from_json(to_native(params));
          return gga::dynamic_objective(p)(vec(x), t, t_max);
        },
        py::arg("x"), py::arg("t"), py::arg("t_max"), py::arg("params") = py::none());

  m.def("mutation_rates",
        [](int t, int t_max, double p_f0, double p_m0, double a_f, double a_m) {
          const auto r = gga::mutation_rates(t, t_max, {p_f0, p_m0, a_f, a_m});
          return py::make_tuple(r.p_f, r.p_m);
        },
        py::arg("t"), py::arg("t_max"), py::arg("p_f0") = 0.37, py::arg("p_m0") = 0.36,
        py::arg("a_f") = 4.55, py::arg("a_m") = 3.57);

  m.def("newton_step",
        [](const std::vector<double>& x, const std::vector<double>& gradient,
           const std::vector<std::vector<double>>& hessian) {
          gga::Matrix h(static_cast<Eigen::Index>(hessian.size()),
                        static_cast<Eigen::Index>(hessian.size()));
          for (std::size_t i = 0; i < hessian.size(); ++i) {
            if (hessian[i].size() != hessian.size())
              throw gga::UsageError("newton_step: Hessian must be square");
            for (std::size_t k = 0; k < hessian.size(); ++k)
              h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = hessian[i][k];
          }
          const auto r = gga::newton_step(vec(x), {vec(gradient), h});
          return py::make_tuple(list(r.point), r.stepped);
        },
        py::arg("x"), py::arg("gradient"), py::arg("hessian"));

  m.def("classify_chase",
        [](const std::vector<double>& point, double radius) {
          gga::ChaseSpec chase;
          chase.radius = radius;
          return std::string(gga::to_string(gga::classify_chase(vec(point), chase)));
        },
        py::arg("point"), py::arg("radius") = 0.25);

  m.def("evolve",
        [](const py::object& config, std::optional<std::uint64_t> seed) {
          const auto doc = document(config, seed);
          gga::RandomSource rng(doc.evolution.seed);
          gga::RunHistory h;
          {
            py::gil_scoped_release release;
            h = gga::evolve(doc.evolution, doc.make_objective(), rng);
          }
          json records = json::array();
          for (const auto& r : h.records)
            records.push_back({{"t", r.t},
                               {"best_fitness", r.best_fitness},
                               {"best_point", list(r.best_point)},
                               {"mean_fitness", r.mean_fitness},
                               {"p_f", r.rates.p_f},
                               {"p_m", r.rates.p_m},
                               {"male_count", r.male_count}});
          return to_python({{"records", records},
                            {"config_digest", h.config_digest},
                            {"fallback_events", h.fallback_events}});
        },
        py::arg("config") = py::none(), py::arg("seed") = py::none(),
        "Single run. `config` is a partial configuration document.");

  m.def("run_ensemble",
        [](const py::object& config, std::optional<std::uint64_t> seed) {
          const auto doc = document(config, seed);
          gga::EnsembleResult e;
          {
            py::gil_scoped_release release;
            e = gga::run_ensemble(doc.evolution, doc.make_objective(), options(doc));
          }
          return to_python(ensemble_json(e));
        },
        py::arg("config") = py::none(), py::arg("seed") = py::none());

  m.def("bifurcation_sweep",
        [](const py::object& config, std::optional<std::uint64_t> seed) {
          const auto doc = document(config, seed);
          if (doc.objective.name != "perturbed_rastrigin")
            throw gga::ConfigError("sweep requires objective.name = perturbed_rastrigin");
          gga::BifurcationReport r;
          {
            py::gil_scoped_release release;
            r = gga::bifurcation_sweep(doc.evolution,
                                       gga::perturbation_from_json(doc.objective.params),
                                       doc.experiment.lambda_grid, options(doc));
          }
          std::vector<double> se;
          for (std::size_t i = 0; i < r.lambda_grid.size(); ++i) se.push_back(r.standard_error(i));
          return to_python({{"lambda", r.lambda_grid},
                            {"switch_fraction", r.switch_fraction},
                            {"stderr", se},
                            {"n_runs", r.n_runs},
                            {"bifurcation_lambda", r.bifurcation_lambda
                                                       ? json(*r.bifurcation_lambda)
                                                       : json(nullptr)},
                            {"non_decreasing_within_2se",
                             gga::switch_fraction_non_decreasing(r)}});
        },
        py::arg("config") = py::none(), py::arg("seed") = py::none());

  m.def("compare",
        [](const py::object& config, std::optional<std::uint64_t> seed) {
          const auto doc = document(config, seed);
          gga::ComparisonTable t;
          {
            py::gil_scoped_release release;
            t = gga::compare_variants(doc.make_objective(), doc.experiment.variants,
                                      doc.evolution, options(doc));
          }
          json rows = json::array(), tests = json::array();
          for (const auto& row : t.rows) rows.push_back(ensemble_json(row));
          for (const auto& p : t.tests)
            tests.push_back({{"a", std::string(gga::to_string(p.a))},
                             {"b", std::string(gga::to_string(p.b))},
                             {"z", p.z},
                             {"a_greater_at_99", p.a_greater}});
          return to_python({{"variants", rows}, {"pairwise", tests}});
        },
        py::arg("config") = py::none(), py::arg("seed") = py::none());

  m.def("meta_optimize",
        [](const py::object& config, std::optional<std::uint64_t> seed) {
          const auto doc = document(config, seed);
          gga::MetaConfig meta = doc.experiment.meta;
          meta.jobs = doc.experiment.jobs;
          gga::MetaResult r;
          {
            py::gil_scoped_release release;
            r = gga::meta_optimize(doc.evolution, meta, doc.evolution.seed);
          }
          return to_python({{"p_f0", r.best.p_f0},
                            {"p_m0", r.best.p_m0},
                            {"a_f", r.best.a_f},
                            {"a_m", r.best.a_m},
                            {"inner_mean_final_best_fitness", r.inner.mean},
                            {"inner_stderr", r.inner.std_error}});
        },
        py::arg("config") = py::none(), py::arg("seed") = py::none());
}
