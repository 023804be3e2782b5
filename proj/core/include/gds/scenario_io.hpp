// Copyright 2026 The guided-drill-sim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Scenario configuration documents (JSON, schema "gds.scenario/1").
//
// Every key is optional except "schema", "surface" and "targets"; omitted
// keys keep the Scenario defaults. Unknown keys are rejected. Relative file
// references ("surface.file", "targets[i].patch_file") resolve against the
// directory of the scenario file.

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "gds/sim.hpp"

namespace gds {

inline constexpr std::string_view kScenarioSchema = "gds.scenario/1";

/// Throws ConfigError. For syntax errors `where` is "<source>:<line>:<col>";
/// otherwise it is the dotted field path, e.g. "operator.k_p".
Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir = {},
                        std::string_view source = "<scenario>");
Scenario load_scenario(const std::filesystem::path& path);

/// Serializes every field (meshes and patches inline) so that
/// parse_scenario(to_json(s)) reproduces `s` exactly.
std::string scenario_to_json(const Scenario& scenario);

/// Numeric fields that `set_field` accepts, in dotted form.
std::span<const std::string_view> sweepable_fields();

/// Overrides one numeric field. Throws ConfigError listing the sweepable
/// fields when `field` is unknown.
void set_field(Scenario& scenario, std::string_view field, double value);

}  // namespace gds
