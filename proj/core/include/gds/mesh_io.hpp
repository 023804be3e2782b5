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

// Workpiece ingestion. All coordinates are meters in the robot base frame.
// Parse errors throw ConfigError whose `where` is "<source>:<line>".

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "gds/workpiece.hpp"

namespace gds {

/// ASCII STL. Vertices shared between facets are merged when their
/// coordinates are bitwise equal, so the result is an indexed mesh.
TriangleMesh read_stl_ascii(std::istream& in, std::string_view source = "<stl>");

/// OFF. Polygonal faces are fan-triangulated.
TriangleMesh read_off(std::istream& in, std::string_view source = "<off>");

/// Probed surface points: a CSV with the header `x,y,z`.
std::vector<Vec3> read_patch_csv(std::istream& in, std::string_view source = "<csv>");

/// Dispatches on the extension (.stl or .off, case-insensitive). A missing
/// file raises ConfigError naming the path.
TriangleMesh load_mesh(const std::filesystem::path& path);
std::vector<Vec3> load_patch(const std::filesystem::path& path);

void write_stl_ascii(std::ostream& out, const TriangleMesh& mesh, std::string_view name = "gds");
void write_off(std::ostream& out, const TriangleMesh& mesh);

}  // namespace gds
