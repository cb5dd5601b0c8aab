#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gga/config.hpp"
#include "gga/experiments.hpp"

namespace gga {

struct ObjectiveChoice {
  std::string name = "perturbed_rastrigin";
  nlohmann::json params = nlohmann::json::object();
};

struct ExperimentSettings {
  int n_runs = 500;
  int jobs = 1;
  double chase_radius = 0.25;
  std::vector<double> lambda_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6,
                                  0.7, 0.8, 0.9, 1.0, 1.1, 1.2};
  std::vector<Variant> variants{Variant::GA, Variant::GGA, Variant::BGGA, Variant::LGGA};
  MetaConfig meta;
};

/// One experiment, fully resolved. Sections: core, operators, learning,
/// engine (EvolutionConfig), objective, experiment.
struct Document {
  EvolutionConfig evolution;
  ObjectiveChoice objective;
  ExperimentSettings experiment;

  ObjectiveSpec make_objective() const;
};

nlohmann::json to_json(const Document& doc);
/// Strict parse: unknown keys and invalid values raise ConfigError.
Document document_from_json(const nlohmann::json& j);
/// Every default, as a document.
nlohmann::json defaults_json();

/// Applies "dotted.path=value"; value is read as JSON, falling back to a
/// plain string. Intermediate objects are created as needed.
void apply_override(nlohmann::json& j, const std::string& assignment);

/// Reads a JSON document; ConfigError names the path when it is missing or
/// malformed.
nlohmann::json load_json(const std::filesystem::path& path);

}  // namespace gga
