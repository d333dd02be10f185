#pragma once

#include <filesystem>
#include <variant>

#include <json.hpp>

#include "actuation/scenarios.hpp"
#include "actuation/sweep.hpp"

namespace actuation {

using ParsedConfig = std::variant<ScenarioConfig, SweepSpec>;

/// JSON scenario/sweep files. A document with "axes" or "base" is a sweep;
/// anything else is a single scenario. Missing keys take their defaults,
/// unknown keys are rejected, and every error is a ConfigError naming the
/// key path.
ParsedConfig parse_config(const std::filesystem::path& path);
ParsedConfig parse_config_json(const nlohmann::json& doc);
ScenarioConfig parse_scenario(const nlohmann::json& doc, const std::string& prefix = "");
SweepSpec parse_sweep(const nlohmann::json& doc);

nlohmann::json to_json(const ScenarioConfig& config);
nlohmann::json to_json(const SweepSpec& spec);

}  // namespace actuation
