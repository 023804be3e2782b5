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

#include "gds/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

#include "gds/fault.hpp"
#include "gds/mesh_io.hpp"

namespace gds {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

template <typename T>
struct NumberField {
  std::string_view name;
  double T::*member;
};

constexpr NumberField<OperatorModel> kOperatorFields[] = {
    {"k_p", &OperatorModel::k_p},
    {"k_d", &OperatorModel::k_d},
    {"torque_k_p", &OperatorModel::torque_k_p},
    {"torque_k_d", &OperatorModel::torque_k_d},
    {"reaction_delay", &OperatorModel::reaction_delay},
    {"angular_noise", &OperatorModel::angular_noise},
    {"force_cap", &OperatorModel::force_cap},
    {"torque_cap", &OperatorModel::torque_cap},
    {"push_force", &OperatorModel::push_force},
    {"retract_force", &OperatorModel::retract_force},
    {"guided_offset", &OperatorModel::guided_offset},
    {"manual_offset", &OperatorModel::manual_offset},
    {"settle_position", &OperatorModel::settle_position},
    {"settle_angle", &OperatorModel::settle_angle},
    {"settle_speed", &OperatorModel::settle_speed},
};

constexpr NumberField<EnvironmentModel> kEnvironmentFields[] = {
    {"contact_stiffness", &EnvironmentModel::contact_stiffness},
    {"contact_damping", &EnvironmentModel::contact_damping},
    {"cut_resistance", &EnvironmentModel::cut_resistance},
    {"stall_damping", &EnvironmentModel::stall_damping},
    {"thrust_threshold", &EnvironmentModel::thrust_threshold},
    {"hole_depth_goal", &EnvironmentModel::hole_depth_goal},
    {"capture_radius", &EnvironmentModel::capture_radius},
    {"collision_depth", &EnvironmentModel::collision_depth},
};

constexpr NumberField<GuidanceThresholds> kThresholdFields[] = {
    {"adapt_radius", &GuidanceThresholds::adapt_radius},
    {"release_radius", &GuidanceThresholds::release_radius},
    {"lock_radius", &GuidanceThresholds::lock_radius},
    {"align_duration", &GuidanceThresholds::align_duration},
    {"standoff", &GuidanceThresholds::standoff},
};

constexpr NumberField<PlantModel> kPlantFields[] = {
    {"lag_time_constant", &PlantModel::lag_time_constant},
};

constexpr std::string_view kSweepable[] = {
    "dt",
    "max_sim_time",
    "operator.k_p",
    "operator.k_d",
    "operator.torque_k_p",
    "operator.torque_k_d",
    "operator.reaction_delay",
    "operator.angular_noise",
    "operator.force_cap",
    "operator.torque_cap",
    "operator.push_force",
    "operator.retract_force",
    "operator.guided_offset",
    "operator.manual_offset",
    "operator.settle_position",
    "operator.settle_angle",
    "operator.settle_speed",
    "operator.seed",
    "environment.contact_stiffness",
    "environment.contact_damping",
    "environment.cut_resistance",
    "environment.stall_damping",
    "environment.thrust_threshold",
    "environment.hole_depth_goal",
    "environment.capture_radius",
    "environment.collision_depth",
    "thresholds.adapt_radius",
    "thresholds.release_radius",
    "thresholds.lock_radius",
    "thresholds.align_duration",
    "thresholds.standoff",
    "plant.lag_time_constant",
};

std::string_view to_string(OperatorVariant v) {
  switch (v) {
    case OperatorVariant::kAuto: return "auto";
    case OperatorVariant::kGuided: return "guided";
    case OperatorVariant::kManualAlign: return "manual_align";
  }
  return "auto";
}

std::string_view to_string(Discretization d) {
  return d == Discretization::kExactZoh ? "exact_zoh" : "implicit_euler";
}

std::string child(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string element(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

/// Reads keys of one JSON object and rejects the ones nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  const json* find(std::string_view key) {
    seen_.emplace(key);
    const auto it = j_.find(std::string(key));
    return it == j_.end() ? nullptr : &*it;
  }

  const json& require(std::string_view key) {
    const json* v = find(key);
    if (v == nullptr) throw ConfigError(child(path_, key), "missing required key");
    return *v;
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.contains(key)) throw ConfigError(child(path_, key), "unknown key");
    }
  }

  std::string path(std::string_view key) const { return child(path_, key); }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string, std::less<>> seen_;
};

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "must be finite");
  return v;
}

std::uint64_t as_uint(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) throw ConfigError(path, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> as_numbers(const json& j, const std::string& path, std::size_t n) {
  if (!j.is_array() || j.size() != n) {
    throw ConfigError(path, "expected an array of " + std::to_string(n) + " numbers");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(as_number(j[i], element(path, i)));
  return out;
}

Vec3 as_vec3(const json& j, const std::string& path) {
  const auto v = as_numbers(j, path, 3);
  return {v[0], v[1], v[2]};
}

std::vector<Vec3> as_points(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of [x, y, z] points");
  std::vector<Vec3> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_vec3(j[i], element(path, i)));
  return out;
}

template <typename T, std::size_t N>
void read_numbers(ObjectReader& obj, const NumberField<T> (&fields)[N], T& target) {
  for (const auto& f : fields) {
    if (const json* v = obj.find(f.name)) target.*f.member = as_number(*v, obj.path(f.name));
  }
}

template <typename T, std::size_t N>
void write_numbers(ordered_json& out, const NumberField<T> (&fields)[N], const T& source) {
  for (const auto& f : fields) out[std::string(f.name)] = source.*f.member;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& file) {
  const std::filesystem::path p(file);
  return p.is_absolute() || base.empty() ? p : base / p;
}

Surface parse_surface(const json& j, const std::filesystem::path& base) {
  ObjectReader obj(j, "surface");
  const std::string type = as_string(obj.require("type"), "surface.type");
  Surface surface;
  if (type == "cylinder") {
    CylinderPatch c;
    if (const json* v = obj.find("center")) c.center = as_vec3(*v, "surface.center");
    if (const json* v = obj.find("axis")) c.axis = as_vec3(*v, "surface.axis");
    if (const json* v = obj.find("radius")) c.radius = as_number(*v, "surface.radius");
    if (const json* v = obj.find("half_length")) {
      c.half_length = as_number(*v, "surface.half_length");
    }
    surface = c;
  } else if (type == "sphere") {
    SpherePatch s;
    if (const json* v = obj.find("center")) s.center = as_vec3(*v, "surface.center");
    if (const json* v = obj.find("radius")) s.radius = as_number(*v, "surface.radius");
    surface = s;
  } else if (type == "mesh") {
    const json* file = obj.find("file");
    const json* vertices = obj.find("vertices");
    const json* triangles = obj.find("triangles");
    if ((file != nullptr) == (vertices != nullptr || triangles != nullptr)) {
      throw ConfigError("surface", "a mesh needs either 'file' or 'vertices' + 'triangles'");
    }
    if (file != nullptr) {
      surface = load_mesh(resolve(base, as_string(*file, "surface.file")));
    } else {
      if (vertices == nullptr || triangles == nullptr) {
        throw ConfigError("surface", "inline meshes need both 'vertices' and 'triangles'");
      }
      TriangleMesh m;
      m.vertices = as_points(*vertices, "surface.vertices");
      if (!triangles->is_array()) throw ConfigError("surface.triangles", "expected an array");
      for (std::size_t i = 0; i < triangles->size(); ++i) {
        const std::string p = element("surface.triangles", i);
        const json& t = (*triangles)[i];
        if (!t.is_array() || t.size() != 3) throw ConfigError(p, "expected 3 vertex indices");
        std::array<std::uint32_t, 3> tri{};
        for (std::size_t k = 0; k < 3; ++k) {
          const auto idx = as_uint(t[k], element(p, k));
          if (idx > std::numeric_limits<std::uint32_t>::max()) {
            throw ConfigError(element(p, k), "index too large");
          }
          tri[k] = static_cast<std::uint32_t>(idx);
        }
        m.triangles.push_back(tri);
      }
      surface = std::move(m);
    }
  } else {
    throw ConfigError("surface.type", "expected 'cylinder', 'sphere' or 'mesh', got '" + type + "'");
  }
  obj.finish();
  try {
    validate_surface(surface);
  } catch (const GeometryFault& e) {
    throw ConfigError("surface", e.what());
  }
  return surface;
}

std::vector<TargetSpec> parse_targets(const json& j, const std::filesystem::path& base) {
  if (!j.is_array() || j.empty()) throw ConfigError("targets", "expected a non-empty array");
  std::vector<TargetSpec> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = element("targets", i);
    ObjectReader obj(j[i], path);
    TargetSpec t;
    t.point = as_vec3(obj.require("point"), obj.path("point"));
    t.phi_deg = as_number(obj.require("phi_deg"), obj.path("phi_deg"));
    t.theta_deg = as_number(obj.require("theta_deg"), obj.path("theta_deg"));
    const json* patch = obj.find("patch");
    const json* patch_file = obj.find("patch_file");
    if (patch != nullptr && patch_file != nullptr) {
      throw ConfigError(path, "'patch' and 'patch_file' are mutually exclusive");
    }
    if (patch != nullptr) t.patch = as_points(*patch, obj.path("patch"));
    if (patch_file != nullptr) {
      t.patch = load_patch(resolve(base, as_string(*patch_file, obj.path("patch_file"))));
    }
    obj.finish();
    out.push_back(std::move(t));
  }
  return out;
}

Pose parse_pose(const json& j) {
  ObjectReader obj(j, "start_pose");
  Pose p;
  if (const json* v = obj.find("position")) p.position = as_vec3(*v, "start_pose.position");
  if (const json* v = obj.find("orientation_wxyz")) {
    const auto q = as_numbers(*v, "start_pose.orientation_wxyz", 4);
    try {
      p.orientation = UnitQuat::from_components(q[0], q[1], q[2], q[3]);
    } catch (const GeometryFault& e) {
      throw ConfigError("start_pose.orientation_wxyz", e.what());
    }
  }
  obj.finish();
  return p;
}

json parse_document(std::string_view text, std::string_view source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line and column.
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(std::string(source) + ":" + std::to_string(line) + ":" +
                          std::to_string(col),
                      "JSON syntax error");
  }
}

ordered_json vec_json(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

ordered_json points_json(const std::vector<Vec3>& pts) {
  ordered_json out = ordered_json::array();
  for (const auto& p : pts) out.push_back(vec_json(p));
  return out;
}

}  // namespace

Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir,
                        std::string_view source) {
  const json doc = parse_document(text, source);
  ObjectReader root(doc, "");

  const std::string schema = as_string(root.require("schema"), "schema");
  if (schema != kScenarioSchema) {
    throw ConfigError("schema", "unsupported schema '" + schema + "', expected '" +
                                    std::string(kScenarioSchema) + "'");
  }

  Scenario s;
  s.surface = parse_surface(root.require("surface"), base_dir);
  s.targets = parse_targets(root.require("targets"), base_dir);

  if (const json* v = root.find("condition")) {
    const auto c = condition_from_string(as_string(*v, "condition"));
    if (!c) throw ConfigError("condition", "expected 'with' or 'without'");
    s.condition = *c;
  }
  if (const json* v = root.find("dt")) s.dt = as_number(*v, "dt");
  if (const json* v = root.find("max_sim_time")) s.max_sim_time = as_number(*v, "max_sim_time");
  if (const json* v = root.find("discretization")) {
    const std::string d = as_string(*v, "discretization");
    if (d == "exact_zoh") {
      s.discretization = Discretization::kExactZoh;
    } else if (d == "implicit_euler") {
      s.discretization = Discretization::kImplicitEuler;
    } else {
      throw ConfigError("discretization", "expected 'exact_zoh' or 'implicit_euler'");
    }
  }
  if (const json* v = root.find("reference_direction")) {
    s.reference_direction = as_vec3(*v, "reference_direction");
  }
  if (const json* v = root.find("base_position")) s.base_position = as_vec3(*v, "base_position");
  if (const json* v = root.find("start_pose")) s.start_pose = parse_pose(*v);

  if (const json* v = root.find("thresholds")) {
    ObjectReader obj(*v, "thresholds");
    read_numbers(obj, kThresholdFields, s.thresholds);
    obj.finish();
  }
  if (const json* v = root.find("operator")) {
    ObjectReader obj(*v, "operator");
    read_numbers(obj, kOperatorFields, s.op);
    if (const json* seed = obj.find("seed")) s.op.seed = as_uint(*seed, "operator.seed");
    if (const json* variant = obj.find("variant")) {
      const std::string name = as_string(*variant, "operator.variant");
      if (name == "auto") {
        s.op.variant = OperatorVariant::kAuto;
      } else if (name == "guided") {
        s.op.variant = OperatorVariant::kGuided;
      } else if (name == "manual_align") {
        s.op.variant = OperatorVariant::kManualAlign;
      } else {
        throw ConfigError("operator.variant", "expected 'auto', 'guided' or 'manual_align'");
      }
    }
    obj.finish();
  }
  if (const json* v = root.find("environment")) {
    ObjectReader obj(*v, "environment");
    read_numbers(obj, kEnvironmentFields, s.environment);
    obj.finish();
  }
  if (const json* v = root.find("plant")) {
    ObjectReader obj(*v, "plant");
    read_numbers(obj, kPlantFields, s.plant);
    obj.finish();
  }
  root.finish();

  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str(), path.parent_path(), path.string());
}

std::string scenario_to_json(const Scenario& s) {
  ordered_json doc;
  doc["schema"] = kScenarioSchema;
  doc["condition"] = to_string(s.condition);
  doc["dt"] = s.dt;
  doc["max_sim_time"] = s.max_sim_time;
  doc["discretization"] = to_string(s.discretization);

  ordered_json surface;
  std::visit(
      [&surface](const auto& surf) {
        using T = std::decay_t<decltype(surf)>;
        if constexpr (std::is_same_v<T, CylinderPatch>) {
          surface["type"] = "cylinder";
          surface["center"] = vec_json(surf.center);
          surface["axis"] = vec_json(surf.axis);
          surface["radius"] = surf.radius;
          surface["half_length"] = surf.half_length;
        } else if constexpr (std::is_same_v<T, SpherePatch>) {
          surface["type"] = "sphere";
          surface["center"] = vec_json(surf.center);
          surface["radius"] = surf.radius;
        } else {
          surface["type"] = "mesh";
          surface["vertices"] = points_json(surf.vertices);
          ordered_json tris = ordered_json::array();
          for (const auto& t : surf.triangles) tris.push_back({t[0], t[1], t[2]});
          surface["triangles"] = std::move(tris);
        }
      },
      s.surface);
  doc["surface"] = std::move(surface);

  ordered_json targets = ordered_json::array();
  for (const auto& t : s.targets) {
    ordered_json jt;
    jt["point"] = vec_json(t.point);
    jt["phi_deg"] = t.phi_deg;
    jt["theta_deg"] = t.theta_deg;
    if (!t.patch.empty()) jt["patch"] = points_json(t.patch);
    targets.push_back(std::move(jt));
  }
  doc["targets"] = std::move(targets);

  doc["reference_direction"] = vec_json(s.reference_direction);
  doc["base_position"] = vec_json(s.base_position);
  const UnitQuat& q = s.start_pose.orientation;
  doc["start_pose"] = {{"position", vec_json(s.start_pose.position)},
                       {"orientation_wxyz", {q.w(), q.x(), q.y(), q.z()}}};

  ordered_json thresholds;
  write_numbers(thresholds, kThresholdFields, s.thresholds);
  doc["thresholds"] = std::move(thresholds);

  ordered_json op;
  op["variant"] = to_string(s.op.variant);
  write_numbers(op, kOperatorFields, s.op);
  op["seed"] = s.op.seed;
  doc["operator"] = std::move(op);

  ordered_json env;
  write_numbers(env, kEnvironmentFields, s.environment);
  doc["environment"] = std::move(env);

  ordered_json plant;
  write_numbers(plant, kPlantFields, s.plant);
  doc["plant"] = std::move(plant);

  return doc.dump(2) + "\n";
}

std::span<const std::string_view> sweepable_fields() { return kSweepable; }

void set_field(Scenario& s, std::string_view field, double value) {
  const auto set_in = [&](auto& target, const auto& fields, std::string_view prefix) {
    if (!field.starts_with(prefix)) return false;
    const std::string_view leaf = field.substr(prefix.size());
    for (const auto& f : fields) {
      if (f.name == leaf) {
        target.*f.member = value;
        return true;
      }
    }
    return false;
  };

  if (field == "dt") {
    s.dt = value;
    return;
  }
  if (field == "max_sim_time") {
    s.max_sim_time = value;
    return;
  }
  if (field == "operator.seed") {
    if (!(value >= 0.0) || value != std::floor(value) || value > 9.0e15) {
      throw ConfigError("operator.seed", "expected a non-negative integer");
    }
    s.op.seed = static_cast<std::uint64_t>(value);
    return;
  }
  if (set_in(s.op, kOperatorFields, "operator.") ||
      set_in(s.environment, kEnvironmentFields, "environment.") ||
      set_in(s.thresholds, kThresholdFields, "thresholds.") ||
      set_in(s.plant, kPlantFields, "plant.")) {
    return;
  }
  std::string list;
  for (const auto name : kSweepable) {
    if (!list.empty()) list += ", ";
    list += name;
  }
  throw ConfigError(std::string(field), "not a sweepable field; choose one of: " + list);
}

}  // namespace gds
