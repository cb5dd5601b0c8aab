#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "gga/config.hpp"

namespace gga {

/// Serializes the algorithm knobs into the "core", "operators", "learning"
/// and "engine" sections of a configuration document.
nlohmann::json to_json(const EvolutionConfig& config);

/// Reads those sections on top of `base`. Absent keys keep the base value;
/// unknown keys raise ConfigError. The result is validated.
EvolutionConfig evolution_from_json(const nlohmann::json& doc,
                                    const EvolutionConfig& base = {});

/// Stable 16-hex-digit FNV-1a digest of the serialized configuration.
std::string config_digest(const EvolutionConfig& config);

/// Throws ConfigError if `obj` has a key outside `allowed`.
void require_known_keys(const nlohmann::json& obj,
                        std::initializer_list<const char*> allowed,
                        const std::string& where);

}  // namespace gga
