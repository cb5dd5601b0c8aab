#include "gga/document.hpp"

#include <filesystem>

#include "gga/config_json.hpp"
#include "gga/errors.hpp"
#include "gga/io.hpp"

namespace gga {

using nlohmann::json;

ObjectiveSpec Document::make_objective() const {
  return ObjectiveRegistry::instance().make(objective.name, objective.params);
}

namespace {

json interval_json(const Interval& iv) { return {iv.lo, iv.hi}; }

Interval interval_from(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(what + " must be a [lo, hi] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("bad value for '" + where + "." + key + "'");
  }
}

json meta_json(const MetaConfig& m) {
  return {{"box",
           {{"p_f0", interval_json(m.box.p_f0)},
            {"p_m0", interval_json(m.box.p_m0)},
            {"a_f", interval_json(m.box.a_f)},
            {"a_m", interval_json(m.box.a_m)}}},
          {"population_size", m.population_size},
          {"generations", m.generations},
          {"mutation_sigma", m.mutation_sigma},
          {"inner_runs", m.inner_runs}};
}

MetaConfig meta_from(const json& j, MetaConfig m) {
  require_known_keys(j, {"box", "population_size", "generations", "mutation_sigma", "inner_runs"},
                     "experiment.meta");
  if (j.contains("box")) {
    const auto& b = j.at("box");
    require_known_keys(b, {"p_f0", "p_m0", "a_f", "a_m"}, "experiment.meta.box");
    if (b.contains("p_f0")) m.box.p_f0 = interval_from(b.at("p_f0"), "experiment.meta.box.p_f0");
    if (b.contains("p_m0")) m.box.p_m0 = interval_from(b.at("p_m0"), "experiment.meta.box.p_m0");
    if (b.contains("a_f")) m.box.a_f = interval_from(b.at("a_f"), "experiment.meta.box.a_f");
    if (b.contains("a_m")) m.box.a_m = interval_from(b.at("a_m"), "experiment.meta.box.a_m");
  }
  read(j, "population_size", m.population_size, "experiment.meta");
  read(j, "generations", m.generations, "experiment.meta");
  read(j, "mutation_sigma", m.mutation_sigma, "experiment.meta");
  read(j, "inner_runs", m.inner_runs, "experiment.meta");
  return m;
}

}  // namespace

json to_json(const Document& doc) {
  json j = to_json(doc.evolution);
  j["objective"] = {{"name", doc.objective.name}, {"params", doc.objective.params}};
  json variants = json::array();
  for (Variant v : doc.experiment.variants) variants.push_back(std::string(to_string(v)));
  j["experiment"] = {{"n_runs", doc.experiment.n_runs},
                     {"jobs", doc.experiment.jobs},
                     {"chase_radius", doc.experiment.chase_radius},
                     {"lambda_grid", doc.experiment.lambda_grid},
                     {"variants", variants},
                     {"meta", meta_json(doc.experiment.meta)}};
  return j;
}

Document document_from_json(const json& j) {
  require_known_keys(j, {"core", "operators", "learning", "engine", "objective", "experiment"},
                     "config");
  Document doc;
  doc.evolution = evolution_from_json(j);

  if (j.contains("objective")) {
    const auto& o = j.at("objective");
    require_known_keys(o, {"name", "params"}, "objective");
    read(o, "name", doc.objective.name, "objective");
    if (o.contains("params")) doc.objective.params = o.at("params");
  }
  // Construct once so bad objective names or parameters fail at load time.
  const ObjectiveSpec objective = doc.make_objective();
  if (objective.dimension != doc.evolution.dimension)
    throw ConfigError("objective '" + objective.name + "' has dimension " +
                      std::to_string(objective.dimension) + " but core.dimension is " +
                      std::to_string(doc.evolution.dimension));

  if (j.contains("experiment")) {
    const auto& e = j.at("experiment");
    require_known_keys(e, {"n_runs", "jobs", "chase_radius", "lambda_grid", "variants", "meta"},
                       "experiment");
    auto& x = doc.experiment;
    read(e, "n_runs", x.n_runs, "experiment");
    read(e, "jobs", x.jobs, "experiment");
    read(e, "chase_radius", x.chase_radius, "experiment");
    read(e, "lambda_grid", x.lambda_grid, "experiment");
    if (e.contains("variants")) {
      std::vector<std::string> names;
      read(e, "variants", names, "experiment");
      x.variants.clear();
      for (const auto& n : names) x.variants.push_back(parse_variant(n));
    }
    if (e.contains("meta")) x.meta = meta_from(e.at("meta"), x.meta);
  }
  const auto& x = doc.experiment;
  if (x.n_runs < 1) throw ConfigError("experiment.n_runs must be at least 1");
  if (x.jobs < 1) throw ConfigError("experiment.jobs must be at least 1");
  if (!(x.chase_radius > 0.0)) throw ConfigError("experiment.chase_radius must be positive");
  if (x.variants.empty()) throw ConfigError("experiment.variants must not be empty");
  for (std::size_t i = 1; i < x.lambda_grid.size(); ++i)
    if (!(x.lambda_grid[i - 1] < x.lambda_grid[i]))
      throw ConfigError("experiment.lambda_grid must be strictly ascending");
  return doc;
}

json defaults_json() {
  Document doc;
  doc.objective.params = to_json(PerturbationParams{});
  return to_json(doc);
}

void apply_override(json& j, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override '" + assignment + "' is not of the form key=value");
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);

  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  json* node = &j;
  std::size_t start = 0;
  for (;;) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (key.empty()) throw ConfigError("override '" + assignment + "' has an empty key");
    if (!node->is_object()) throw ConfigError("override '" + path + "' descends into a non-object");
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    if (node->is_null()) *node = json::object();
    start = dot + 1;
  }
}

json load_json(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path))
    throw ConfigError("config file '" + path.string() + "' does not exist");
  const std::string text = read_text(path);
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config file '" + path.string() + "' is not valid JSON");
  return j;
}

}  // namespace gga
