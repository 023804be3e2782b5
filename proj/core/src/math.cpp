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

#include "gds/math.hpp"

#include <algorithm>

#include "gds/fault.hpp"

namespace gds {

UnitQuat UnitQuat::from_components(double w, double x, double y, double z) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw GeometryFault("quaternion with zero or non-finite norm");
  }
  const double s = (w < 0.0 ? -1.0 : 1.0) / n;
  return UnitQuat(w * s, x * s, y * s, z * s, Raw{});
}

UnitQuat UnitQuat::from_axis_angle(const Vec3& axis, double angle_rad) {
  const double len = axis.norm();
  if (len == 0.0 || angle_rad == 0.0) return UnitQuat{};
  const double half = 0.5 * angle_rad;
  const Vec3 a = axis * (std::sin(half) / len);
  return from_components(std::cos(half), a.x, a.y, a.z);
}

UnitQuat UnitQuat::from_rotation_vector(const Vec3& rv) {
  const double angle = rv.norm();
  if (angle == 0.0) return UnitQuat{};
  return from_axis_angle(rv, angle);
}

UnitQuat UnitQuat::from_two_vectors(const Vec3& from, const Vec3& to) {
  const Vec3 a = from.normalized();
  const Vec3 b = to.normalized();
  const Vec3 c = a.cross(b);
  const double d = a.dot(b);
  if (c.squared_norm() < 1e-30) {
    if (d > 0.0) return UnitQuat{};
    // Half turn about any axis perpendicular to `a`.
    Vec3 perp = a.cross(Vec3::unit_x());
    if (perp.squared_norm() < 1e-12) perp = a.cross(Vec3::unit_y());
    return from_axis_angle(perp, kPi);
  }
  // q = (1 + a.b, a x b) normalized is the half-angle rotation a -> b.
  return from_components(1.0 + d, c.x, c.y, c.z);
}

UnitQuat UnitQuat::operator*(const UnitQuat& o) const {
  return from_components(w_ * o.w_ - x_ * o.x_ - y_ * o.y_ - z_ * o.z_,
                         w_ * o.x_ + x_ * o.w_ + y_ * o.z_ - z_ * o.y_,
                         w_ * o.y_ - x_ * o.z_ + y_ * o.w_ + z_ * o.x_,
                         w_ * o.z_ + x_ * o.y_ - y_ * o.x_ + z_ * o.w_);
}

double UnitQuat::angle() const { return 2.0 * std::atan2(vec().norm(), std::abs(w_)); }

Vec3 UnitQuat::rotation_vector() const {
  const Vec3 v = vec();
  const double s = v.norm();
  if (s == 0.0) return {};
  return v * (2.0 * std::atan2(s, w_) / s);
}

std::array<Vec3, 3> UnitQuat::to_matrix_columns() const {
  return {rotate(*this, Vec3::unit_x()), rotate(*this, Vec3::unit_y()),
          rotate(*this, Vec3::unit_z())};
}

Vec3 rotate(const UnitQuat& q, const Vec3& v) {
  // v' = v + 2w(u x v) + 2u x (u x v)
  const Vec3 u = q.vec();
  const Vec3 t = u.cross(v) * 2.0;
  return v + t * q.w() + u.cross(t);
}

UnitQuat slerp(const UnitQuat& q0, const UnitQuat& q1, double t) {
  if (t <= 0.0) return q0;
  if (t >= 1.0) return q1;
  // Relative rotation expressed in q0's frame; its canonical form (w >= 0)
  // is the shortest arc.
  const UnitQuat rel = q0.conjugate() * q1;
  const double s = rel.vec().norm();
  if (s == 0.0) return q0;
  // For antipodal inputs (rel.w() == 0) both arcs have length pi; the
  // canonical sign of `rel` fixes which axis is taken.
  const double angle = 2.0 * std::atan2(s, rel.w());
  return q0 * UnitQuat::from_axis_angle(rel.vec(), t * angle);
}

double angular_distance(const UnitQuat& a, const UnitQuat& b) {
  return (a.conjugate() * b).angle();
}

double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

Frame3 Frame3::from_normal_and_reference(const Vec3& origin, const Vec3& normal,
                                         const Vec3& reference) {
  const Vec3 n = normal.normalized();
  const double ref_len = reference.norm();
  if (!(ref_len > 0.0) || !n.is_finite() ||
      !(std::abs(n.dot(reference) / ref_len) < 1.0 - 1e-6)) {
    throw GeometryFault("frame reference direction is parallel to the normal");
  }
  const Vec3 tangential = reference - n * reference.dot(n);
  const Vec3 u = tangential / tangential.norm();
  const Vec3 w = n.cross(u);
  return Frame3(origin, u, w, n);
}

bool Frame3::is_valid(double tol) const {
  const auto unit = [tol](const Vec3& v) { return std::abs(v.norm() - 1.0) <= tol; };
  if (!unit(u_) || !unit(w_) || !unit(n_)) return false;
  if (std::abs(u_.dot(w_)) > tol || std::abs(u_.dot(n_)) > tol || std::abs(w_.dot(n_)) > tol) {
    return false;
  }
  const double det = u_.cross(w_).dot(n_);
  return std::abs(det - 1.0) <= tol;
}

}  // namespace gds
