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

// Workpiece geometry: analytic and meshed surfaces, tangent-plane fitting of
// probed points, target frames and drilling axes.
//
// Conventions:
//  - Surface normals returned by surface_normal() point out of the material.
//  - A DrillTarget's frame normal n_d points *into* the material, so that a
//    polar angle of zero is the feed direction of a perpendicular hole and
//    the drilling axis is the direction in which the bit advances.
//  - The polar angle phi is measured from n_d, the azimuth theta from u_d
//    towards w_d.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "gds/math.hpp"

namespace gds {

struct CylinderPatch {
  Vec3 center;                  // a point on the cylinder axis
  Vec3 axis = Vec3::unit_y();   // unit direction of the cylinder axis
  double radius = 0.2;          // m
  double half_length = 0.3;     // m, extent along the axis from center
};

struct SpherePatch {
  Vec3 center;
  double radius = 0.2;
};

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;

  /// Throws GeometryFault on out-of-range indices or degenerate triangles.
  void validate() const;
};

using Surface = std::variant<CylinderPatch, SpherePatch, TriangleMesh>;

/// Throws GeometryFault when the surface violates its invariants.
void validate_surface(const Surface& surface);

struct SurfaceQuery {
  Vec3 closest_point;
  Vec3 outward_normal;
  double signed_distance = 0.0;  // > 0 outside the material
};

/// Closest-point query. For meshes the normal is the angle-weighted
/// pseudo-normal of the closest feature (face, edge or vertex), which also
/// gives the sign of the distance.
SurfaceQuery query_surface(const Surface& surface, const Vec3& point);

/// Outward unit normal at `point`. Throws GeometryFault when `point` is
/// farther than `tolerance` from the surface.
Vec3 surface_normal(const Surface& surface, const Vec3& point, double tolerance = 0.005);

// ----------------------------------------------------------------------------
// Plane fitting

struct PlaneFit {
  Vec3 centroid;
  Vec3 normal;
  double rms_residual = 0.0;
};

/// Total-least-squares plane through >= 3 points: the normal is the
/// eigenvector of the smallest covariance eigenvalue. The sign is chosen so
/// that the normal points away from `reference_point` (default: the robot
/// base at the origin); when the plane passes through the reference point
/// the largest-magnitude component is made positive. Throws GeometryFault
/// on fewer than three points or collinear data.
PlaneFit fit_plane(std::span<const Vec3> points, const Vec3& reference_point = {});

// ----------------------------------------------------------------------------
// Targets

/// Frame at `point` with n = normal and u = tangential part of `reference`.
/// Falls back to the global x, y, z axes (in that order) when `reference` is
/// parallel to the normal; throws GeometryFault if every candidate fails.
Frame3 build_target_frame(const Vec3& point, const Vec3& normal, const Vec3& reference);

/// Unit drilling axis cos(phi) n + sin(phi) (cos(theta) u + sin(theta) w).
/// Requires 0 <= phi <= 90 and 0 <= theta < 360 (degrees).
Vec3 drilling_axis(const Frame3& frame, double phi_deg, double theta_deg);

struct AxisAngles {
  double phi_deg = 0.0;
  double theta_deg = 0.0;
};

/// Inverse of drilling_axis: polar angle from n, azimuth atan2(a.w, a.u)
/// mapped to [0, 360).
AxisAngles decompose_axis(const Frame3& frame, const Vec3& axis);

struct DrillTarget {
  Vec3 point;
  Frame3 frame;
  double phi_deg = 0.0;
  double theta_deg = 0.0;
  Vec3 axis;  // drilling direction, into the material
};

/// Builds a target whose frame normal is the inward surface normal at
/// `point` (which is first projected onto the surface).
DrillTarget make_target(const Surface& surface, const Vec3& point, double phi_deg,
                        double theta_deg, const Vec3& reference = Vec3::unit_x());

/// Builds a target from a probed patch: the fitted plane gives the normal,
/// oriented away from `reference_point`.
DrillTarget make_target_from_patch(std::span<const Vec3> patch, const Vec3& point,
                                   double phi_deg, double theta_deg,
                                   const Vec3& reference = Vec3::unit_x(),
                                   const Vec3& reference_point = {});

// ----------------------------------------------------------------------------
// Tessellation helpers (used for mesh-convergence checks and examples)

/// Grid tessellation of a cylinder patch: `n_around` segments over the
/// angular range [-half_angle, half_angle] about `up` and `n_along` along
/// the axis. Triangles are wound with outward normals.
TriangleMesh tessellate_cylinder(const CylinderPatch& cyl, const Vec3& up, double half_angle_rad,
                                 int n_around, int n_along);

}  // namespace gds
