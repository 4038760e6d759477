// Copyright 2026 The orthoreflect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "orthoreflect/reinsurance.hpp"

namespace orthoreflect {

/// Parses a scenario from JSON. Accepts either the bare config object or a
/// run manifest carrying it under "config". Missing optional fields
/// (seed, grid_points) take their defaults; unknown fields are rejected.
/// Errors are ConfigError with the offending field in the message.
ScenarioConfig config_from_json(const std::string& text);

std::string config_to_json(const ScenarioConfig& cfg);

ScenarioConfig load_config_file(const std::string& path);

}  // namespace orthoreflect
