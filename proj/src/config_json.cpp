#include "gga/config_json.hpp"

#include <algorithm>
#include <cstdio>

#include "gga/errors.hpp"

namespace gga {

using nlohmann::json;

void require_known_keys(const json& obj, std::initializer_list<const char*> allowed,
                        const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* a) { return key == a; });
    if (!known) throw ConfigError("unknown key '" + where + "." + key + "'");
  }
}

json to_json(const EvolutionConfig& c) {
  json bounds = json::array();
  for (const auto& b : c.search_bounds) bounds.push_back({b.lo, b.hi});
  const auto& s = c.mutation_schedule;
  return {
      {"core",
       {{"dimension", c.dimension},
        {"population_size", c.population_size},
        {"max_generation", c.max_generation},
        {"search_bounds", bounds},
        {"gender_probability", c.gender_probability},
        {"seed", c.seed}}},
      {"operators",
       {{"mutation_schedule",
         {{"p_f0", s.p_f0}, {"p_m0", s.p_m0}, {"a_f", s.a_f}, {"a_m", s.a_m}}},
        {"mutation_sigma", c.mutation_sigma},
        {"crossover_lambda_range", {c.crossover_lambda_range.lo, c.crossover_lambda_range.hi}},
        {"crossover_form", std::string(to_string(c.crossover_form))},
        {"elitism_count", c.elitism_count},
        {"selection_window_fraction", c.selection_window_fraction}}},
      {"learning",
       {{"enabled", c.learning_enabled},
        {"learn_source", std::string(to_string(c.learn_source))},
        {"fd_step", c.fd_step}}},
      {"engine", {{"variant", std::string(to_string(c.variant))}}},
  };
}

namespace {

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("bad value for '" + where + "." + key + "'");
  }
}

Interval read_interval(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(what + " must be a [lo, hi] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

EvolutionConfig evolution_from_json(const json& doc, const EvolutionConfig& base) {
  EvolutionConfig c = base;
  if (!doc.is_object()) throw ConfigError("configuration document must be an object");

  if (doc.contains("core")) {
    const auto& core = doc.at("core");
    require_known_keys(core,
                       {"dimension", "population_size", "max_generation", "search_bounds",
                        "gender_probability", "seed"},
                       "core");
    read(core, "dimension", c.dimension, "core");
    read(core, "population_size", c.population_size, "core");
    read(core, "max_generation", c.max_generation, "core");
    read(core, "gender_probability", c.gender_probability, "core");
    read(core, "seed", c.seed, "core");
    if (core.contains("search_bounds")) {
      const auto& sb = core.at("search_bounds");
      c.search_bounds.clear();
      // A single [lo, hi] pair applies to every coordinate.
      if (sb.is_array() && sb.size() == 2 && sb[0].is_number()) {
        c.search_bounds.assign(static_cast<std::size_t>(std::max(c.dimension, 0)),
                               read_interval(sb, "core.search_bounds"));
      } else if (sb.is_array()) {
        for (const auto& iv : sb) c.search_bounds.push_back(read_interval(iv, "core.search_bounds[]"));
      } else {
        throw ConfigError("core.search_bounds must be a pair or a list of pairs");
      }
    } else if (static_cast<int>(c.search_bounds.size()) != c.dimension &&
               !c.search_bounds.empty() && c.dimension > 0) {
      c.search_bounds.resize(static_cast<std::size_t>(c.dimension), c.search_bounds.front());
    }
  }

  if (doc.contains("operators")) {
    const auto& op = doc.at("operators");
    require_known_keys(op,
                       {"mutation_schedule", "mutation_sigma", "crossover_lambda_range",
                        "crossover_form", "elitism_count", "selection_window_fraction"},
                       "operators");
    if (op.contains("mutation_schedule")) {
      const auto& ms = op.at("mutation_schedule");
      require_known_keys(ms, {"p_f0", "p_m0", "a_f", "a_m"}, "operators.mutation_schedule");
      read(ms, "p_f0", c.mutation_schedule.p_f0, "operators.mutation_schedule");
      read(ms, "p_m0", c.mutation_schedule.p_m0, "operators.mutation_schedule");
      read(ms, "a_f", c.mutation_schedule.a_f, "operators.mutation_schedule");
      read(ms, "a_m", c.mutation_schedule.a_m, "operators.mutation_schedule");
    }
    read(op, "mutation_sigma", c.mutation_sigma, "operators");
    if (op.contains("crossover_lambda_range"))
      c.crossover_lambda_range =
          read_interval(op.at("crossover_lambda_range"), "operators.crossover_lambda_range");
    if (op.contains("crossover_form")) {
      std::string form;
      read(op, "crossover_form", form, "operators");
      c.crossover_form = parse_crossover_form(form);
    }
    read(op, "elitism_count", c.elitism_count, "operators");
    read(op, "selection_window_fraction", c.selection_window_fraction, "operators");
  }

  if (doc.contains("learning")) {
    const auto& l = doc.at("learning");
    require_known_keys(l, {"enabled", "learn_source", "fd_step"}, "learning");
    read(l, "enabled", c.learning_enabled, "learning");
    read(l, "fd_step", c.fd_step, "learning");
    if (l.contains("learn_source")) {
      std::string src;
      read(l, "learn_source", src, "learning");
      c.learn_source = parse_learn_source(src);
    }
  }

  if (doc.contains("engine")) {
    const auto& e = doc.at("engine");
    require_known_keys(e, {"variant"}, "engine");
    if (e.contains("variant")) {
      std::string v;
      read(e, "variant", v, "engine");
      c.variant = parse_variant(v);
    }
  }

  c.validate();
  return c;
}

std::string config_digest(const EvolutionConfig& config) {
  const std::string text = to_json(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace gga
