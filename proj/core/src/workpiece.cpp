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

#include "gds/workpiece.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gds/fault.hpp"

namespace gds {
namespace {

enum class Feature { kFace, kEdgeAB, kEdgeBC, kEdgeCA, kVertexA, kVertexB, kVertexC };

struct TriangleHit {
  Vec3 point;
  Feature feature = Feature::kFace;
};

// Closest point on triangle abc to p, with the Voronoi region it falls in
// (Ericson, Real-Time Collision Detection, 5.1.5).
TriangleHit closest_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 ab = b - a;
  const Vec3 ac = c - a;
  const Vec3 ap = p - a;
  const double d1 = ab.dot(ap);
  const double d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return {a, Feature::kVertexA};

  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp);
  const double d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return {b, Feature::kVertexB};

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    return {a + ab * (d1 / (d1 - d3)), Feature::kEdgeAB};
  }

  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp);
  const double d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return {c, Feature::kVertexC};

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    return {a + ac * (d2 / (d2 - d6)), Feature::kEdgeCA};
  }

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    return {b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6))), Feature::kEdgeBC};
  }

  const double denom = 1.0 / (va + vb + vc);
  return {a + ab * (vb * denom) + ac * (vc * denom), Feature::kFace};
}

Vec3 face_normal(const TriangleMesh& mesh, const std::array<std::uint32_t, 3>& t) {
  const Vec3& a = mesh.vertices[t[0]];
  const Vec3& b = mesh.vertices[t[1]];
  const Vec3& c = mesh.vertices[t[2]];
  return (b - a).cross(c - a).normalized();
}

// Interior angle of triangle t at its corner `corner` (0..2).
double corner_angle(const TriangleMesh& mesh, const std::array<std::uint32_t, 3>& t, int corner) {
  const Vec3& p = mesh.vertices[t[corner]];
  const Vec3& q = mesh.vertices[t[(corner + 1) % 3]];
  const Vec3& r = mesh.vertices[t[(corner + 2) % 3]];
  return angle_between(q - p, r - p);
}

Vec3 vertex_pseudo_normal(const TriangleMesh& mesh, std::uint32_t vertex) {
  Vec3 sum;
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      if (t[k] == vertex) sum += face_normal(mesh, t) * corner_angle(mesh, t, k);
    }
  }
  return sum.normalized();
}

Vec3 edge_pseudo_normal(const TriangleMesh& mesh, std::uint32_t i, std::uint32_t j) {
  Vec3 sum;
  for (const auto& t : mesh.triangles) {
    const bool has_i = t[0] == i || t[1] == i || t[2] == i;
    const bool has_j = t[0] == j || t[1] == j || t[2] == j;
    if (has_i && has_j) sum += face_normal(mesh, t);
  }
  return sum.normalized();
}

SurfaceQuery query_mesh(const TriangleMesh& mesh, const Vec3& p) {
  if (mesh.triangles.empty()) throw GeometryFault("mesh has no triangles");
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_tri = 0;
  TriangleHit best_hit;
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    const auto& t = mesh.triangles[i];
    const TriangleHit hit =
        closest_on_triangle(p, mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]);
    const double d2 = (hit.point - p).squared_norm();
    if (d2 < best) {
      best = d2;
      best_tri = i;
      best_hit = hit;
    }
  }
  const auto& t = mesh.triangles[best_tri];
  Vec3 normal;
  switch (best_hit.feature) {
    case Feature::kFace: normal = face_normal(mesh, t); break;
    case Feature::kEdgeAB: normal = edge_pseudo_normal(mesh, t[0], t[1]); break;
    case Feature::kEdgeBC: normal = edge_pseudo_normal(mesh, t[1], t[2]); break;
    case Feature::kEdgeCA: normal = edge_pseudo_normal(mesh, t[2], t[0]); break;
    case Feature::kVertexA: normal = vertex_pseudo_normal(mesh, t[0]); break;
    case Feature::kVertexB: normal = vertex_pseudo_normal(mesh, t[1]); break;
    case Feature::kVertexC: normal = vertex_pseudo_normal(mesh, t[2]); break;
  }
  const double dist = std::sqrt(best);
  const double side = (p - best_hit.point).dot(normal);
  return {best_hit.point, normal, side < 0.0 ? -dist : dist};
}

SurfaceQuery query_cylinder(const CylinderPatch& cyl, const Vec3& p) {
  const Vec3 axis = cyl.axis.normalized();
  const Vec3 rel = p - cyl.center;
  const double along = rel.dot(axis);
  const Vec3 radial = rel - axis * along;
  const double r = radial.norm();
  if (r == 0.0) throw GeometryFault("query point lies on the cylinder axis");
  const Vec3 n = radial / r;
  return {cyl.center + axis * along + n * cyl.radius, n, r - cyl.radius};
}

SurfaceQuery query_sphere(const SpherePatch& sph, const Vec3& p) {
  const Vec3 rel = p - sph.center;
  const double r = rel.norm();
  if (r == 0.0) throw GeometryFault("query point lies at the sphere center");
  const Vec3 n = rel / r;
  return {sph.center + n * sph.radius, n, r - sph.radius};
}

}  // namespace

void TriangleMesh::validate() const {
  if (triangles.empty()) throw GeometryFault("mesh has no triangles");
  for (std::size_t i = 0; i < triangles.size(); ++i) {
    const auto& t = triangles[i];
    for (auto idx : t) {
      if (idx >= vertices.size()) {
        throw GeometryFault("triangle " + std::to_string(i) + " references vertex " +
                            std::to_string(idx) + " of " + std::to_string(vertices.size()));
      }
    }
    const Vec3 c = (vertices[t[1]] - vertices[t[0]]).cross(vertices[t[2]] - vertices[t[0]]);
    if (!(c.norm() > 0.0)) {
      throw GeometryFault("triangle " + std::to_string(i) + " is degenerate");
    }
  }
}

void validate_surface(const Surface& surface) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TriangleMesh>) {
          s.validate();
        } else if constexpr (std::is_same_v<T, CylinderPatch>) {
          if (!(s.radius > 0.0) || !(s.half_length > 0.0) || !(s.axis.norm() > 0.0)) {
            throw GeometryFault("cylinder needs positive radius, extent and a non-zero axis");
          }
        } else {
          if (!(s.radius > 0.0)) throw GeometryFault("sphere radius must be positive");
        }
      },
      surface);
}

SurfaceQuery query_surface(const Surface& surface, const Vec3& point) {
  return std::visit(
      [&point](const auto& s) -> SurfaceQuery {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TriangleMesh>) {
          return query_mesh(s, point);
        } else if constexpr (std::is_same_v<T, CylinderPatch>) {
          return query_cylinder(s, point);
        } else {
          return query_sphere(s, point);
        }
      },
      surface);
}

Vec3 surface_normal(const Surface& surface, const Vec3& point, double tolerance) {
  const SurfaceQuery q = query_surface(surface, point);
  double off = std::abs(q.signed_distance);
  if (const auto* cyl = std::get_if<CylinderPatch>(&surface)) {
    const double along = std::abs((point - cyl->center).dot(cyl->axis.normalized()));
    off = std::max(off, along - cyl->half_length);
  }
  if (off > tolerance) {
    throw GeometryFault("point is " + std::to_string(off) + " m from the surface (tolerance " +
                        std::to_string(tolerance) + " m)");
  }
  return q.outward_normal;
}

PlaneFit fit_plane(std::span<const Vec3> points, const Vec3& reference_point) {
  if (points.size() < 3) {
    throw GeometryFault("plane fit needs at least 3 points, got " + std::to_string(points.size()));
  }
  Vec3 centroid;
  for (const auto& p : points) centroid += p;
  centroid = centroid / static_cast<double>(points.size());

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : points) {
    const Eigen::Vector3d d(p.x - centroid.x, p.y - centroid.y, p.z - centroid.z);
    cov += d * d.transpose();
  }
  cov /= static_cast<double>(points.size());

  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
  if (solver.info() != Eigen::Success) throw GeometryFault("covariance eigensolver failed");
  const Eigen::Vector3d evals = solver.eigenvalues();  // ascending
  if (!(evals(2) > 0.0) || evals(1) <= 1e-12 * evals(2)) {
    throw GeometryFault(
        "plane fit is rank deficient: sample covariance has rank <= 1 (points are "
        "coincident or collinear)");
  }
  const Eigen::Vector3d e = solver.eigenvectors().col(0);
  Vec3 normal = Vec3{e(0), e(1), e(2)}.normalized();

  const Vec3 away = centroid - reference_point;
  const double side = normal.dot(away);
  if (std::abs(side) > 1e-9 * std::max(1.0, away.norm())) {
    if (side < 0.0) normal = -normal;
  } else {
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i) {
      if (std::abs(normal[i]) > std::abs(normal[k])) k = i;
    }
    if (normal[k] < 0.0) normal = -normal;
  }

  double sq = 0.0;
  for (const auto& p : points) {
    const double r = (p - centroid).dot(normal);
    sq += r * r;
  }
  return {centroid, normal, std::sqrt(sq / static_cast<double>(points.size()))};
}

Frame3 build_target_frame(const Vec3& point, const Vec3& normal, const Vec3& reference) {
  const std::array<Vec3, 4> candidates{reference, Vec3::unit_x(), Vec3::unit_y(),
                                       Vec3::unit_z()};
  for (const auto& ref : candidates) {
    try {
      return Frame3::from_normal_and_reference(point, normal, ref);
    } catch (const GeometryFault&) {
    }
  }
  throw GeometryFault("no usable reference direction for the target frame");
}

Vec3 drilling_axis(const Frame3& frame, double phi_deg, double theta_deg) {
  if (!(phi_deg >= 0.0 && phi_deg <= 90.0)) {
    throw std::invalid_argument("polar angle must be within [0, 90] deg");
  }
  if (!(theta_deg >= 0.0 && theta_deg < 360.0)) {
    throw std::invalid_argument("azimuth angle must be within [0, 360) deg");
  }
  const double phi = deg2rad(phi_deg);
  const double theta = deg2rad(theta_deg);
  const Vec3 tangential = frame.u() * std::cos(theta) + frame.w() * std::sin(theta);
  return frame.n() * std::cos(phi) + tangential * std::sin(phi);
}

AxisAngles decompose_axis(const Frame3& frame, const Vec3& axis) {
  const Vec3 local = frame.to_local(axis);
  AxisAngles out;
  out.phi_deg = rad2deg(angle_between(axis, frame.n()));
  if (local.x == 0.0 && local.y == 0.0) return out;
  double theta = rad2deg(std::atan2(local.y, local.x));
  if (theta < 0.0) theta += 360.0;
  if (theta >= 360.0) theta -= 360.0;
  out.theta_deg = theta;
  return out;
}

DrillTarget make_target(const Surface& surface, const Vec3& point, double phi_deg,
                        double theta_deg, const Vec3& reference) {
  const SurfaceQuery q = query_surface(surface, point);
  surface_normal(surface, point);  // range check only
  const Frame3 frame = build_target_frame(q.closest_point, -q.outward_normal, reference);
  return {q.closest_point, frame, phi_deg, theta_deg, drilling_axis(frame, phi_deg, theta_deg)};
}

DrillTarget make_target_from_patch(std::span<const Vec3> patch, const Vec3& point,
                                   double phi_deg, double theta_deg, const Vec3& reference,
                                   const Vec3& reference_point) {
  const PlaneFit fit = fit_plane(patch, reference_point);
  const Vec3 on_plane = point - fit.normal * (point - fit.centroid).dot(fit.normal);
  const Frame3 frame = build_target_frame(on_plane, fit.normal, reference);
  return {on_plane, frame, phi_deg, theta_deg, drilling_axis(frame, phi_deg, theta_deg)};
}

TriangleMesh tessellate_cylinder(const CylinderPatch& cyl, const Vec3& up, double half_angle_rad,
                                 int n_around, int n_along) {
  if (n_around < 1 || n_along < 1) throw std::invalid_argument("tessellation needs >= 1 cell");
  const Vec3 axis = cyl.axis.normalized();
  const Vec3 e1 = (up - axis * up.dot(axis)).normalized();
  const Vec3 e2 = axis.cross(e1);
  TriangleMesh mesh;
  const int cols = n_around + 1;
  for (int j = 0; j <= n_along; ++j) {
    const double s = -cyl.half_length + 2.0 * cyl.half_length * j / n_along;
    for (int i = 0; i <= n_around; ++i) {
      const double a = -half_angle_rad + 2.0 * half_angle_rad * i / n_around;
      const Vec3 radial = e1 * std::cos(a) + e2 * std::sin(a);
      mesh.vertices.push_back(cyl.center + axis * s + radial * cyl.radius);
    }
  }
  const auto idx = [cols](int i, int j) { return static_cast<std::uint32_t>(j * cols + i); };
  const auto push = [&mesh, &cyl, &axis](std::array<std::uint32_t, 3> t) {
    const Vec3& a = mesh.vertices[t[0]];
    const Vec3 n = (mesh.vertices[t[1]] - a).cross(mesh.vertices[t[2]] - a);
    const Vec3 rel = a - cyl.center;
    const Vec3 radial = rel - axis * rel.dot(axis);
    if (n.dot(radial) < 0.0) std::swap(t[1], t[2]);
    mesh.triangles.push_back(t);
  };
  for (int j = 0; j < n_along; ++j) {
    for (int i = 0; i < n_around; ++i) {
      push({idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)});
      push({idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)});
    }
  }
  return mesh;
}

}  // namespace gds
