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

#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace gds {

inline constexpr double kPi = 3.14159265358979323846;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

// ----------------------------------------------------------------------------
// Vec3

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double xx, double yy, double zz) : x(xx), y(yy), z(zz) {}

  static constexpr Vec3 unit_x() { return {1.0, 0.0, 0.0}; }
  static constexpr Vec3 unit_y() { return {0.0, 1.0, 0.0}; }
  static constexpr Vec3 unit_z() { return {0.0, 0.0, 1.0}; }

  constexpr double operator[](std::size_t i) const {
    return i == 0 ? x : (i == 1 ? y : z);
  }

  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  constexpr bool operator==(const Vec3&) const = default;

  constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  constexpr double squared_norm() const { return dot(*this); }
  double norm() const { return std::sqrt(squared_norm()); }
  Vec3 normalized() const { return *this / norm(); }
  bool is_finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

// ----------------------------------------------------------------------------
// UnitQuat
//
// Hamilton convention, w is the scalar part. Every constructing path
// normalizes and flips the sign so that w >= 0.

class UnitQuat {
 public:
  constexpr UnitQuat() = default;

  /// Normalizes and canonicalizes (w >= 0) the given components.
  static UnitQuat from_components(double w, double x, double y, double z);
  /// Rotation of `angle_rad` about `axis` (need not be unit length).
  static UnitQuat from_axis_angle(const Vec3& axis, double angle_rad);
  /// Exponential map of a rotation vector (axis * angle).
  static UnitQuat from_rotation_vector(const Vec3& rv);
  /// Minimal rotation taking unit vector `from` onto unit vector `to`.
  static UnitQuat from_two_vectors(const Vec3& from, const Vec3& to);

  constexpr double w() const { return w_; }
  constexpr double x() const { return x_; }
  constexpr double y() const { return y_; }
  constexpr double z() const { return z_; }
  constexpr Vec3 vec() const { return {x_, y_, z_}; }

  UnitQuat conjugate() const { return UnitQuat(w_, -x_, -y_, -z_, Raw{}); }
  UnitQuat operator*(const UnitQuat& o) const;

  /// Rotation angle in [0, pi].
  double angle() const;
  /// Rotation vector (axis * angle); zero for the identity.
  Vec3 rotation_vector() const;
  /// Columns are the images of the base axes.
  std::array<Vec3, 3> to_matrix_columns() const;

  constexpr bool operator==(const UnitQuat&) const = default;

 private:
  struct Raw {};
  constexpr UnitQuat(double w, double x, double y, double z, Raw)
      : w_(w), x_(x), y_(y), z_(z) {}

  double w_ = 1.0;
  double x_ = 0.0;
  double y_ = 0.0;
  double z_ = 0.0;
};

Vec3 rotate(const UnitQuat& q, const Vec3& v);

/// Shortest-arc spherical interpolation. Antipodal inputs (angle pi) rotate
/// about a fixed axis chosen from q0's frame, so the result is deterministic.
UnitQuat slerp(const UnitQuat& q0, const UnitQuat& q1, double t);

/// Rotation angle between two orientations, in [0, pi].
double angular_distance(const UnitQuat& a, const UnitQuat& b);

inline Vec3 project_onto_axis(const Vec3& v, const Vec3& axis) {
  return axis * v.dot(axis);
}

/// Unsigned angle in [0, pi] between two directions. Uses atan2 of the
/// cross and dot products, which stays accurate near 0 and pi.
double angle_between(const Vec3& a, const Vec3& b);

// ----------------------------------------------------------------------------
// Pose, twist, wrench

struct Pose {
  Vec3 position;
  UnitQuat orientation;

  bool operator==(const Pose&) const = default;
};

/// Local +z of the tool flange is the drill-bit direction.
inline Vec3 tool_axis(const Pose& pose) { return rotate(pose.orientation, Vec3::unit_z()); }

struct Twist6 {
  Vec3 linear;   // m/s
  Vec3 angular;  // rad/s

  constexpr double operator[](std::size_t i) const {
    return i < 3 ? linear[i] : angular[i - 3];
  }
  static Twist6 from_array(const std::array<double, 6>& a) {
    return {{a[0], a[1], a[2]}, {a[3], a[4], a[5]}};
  }
  std::array<double, 6> to_array() const {
    return {linear.x, linear.y, linear.z, angular.x, angular.y, angular.z};
  }
  bool is_finite() const { return linear.is_finite() && angular.is_finite(); }
  bool operator==(const Twist6&) const = default;
};

struct Wrench6 {
  Vec3 force;   // N
  Vec3 torque;  // N m

  constexpr double operator[](std::size_t i) const {
    return i < 3 ? force[i] : torque[i - 3];
  }
  static Wrench6 from_array(const std::array<double, 6>& a) {
    return {{a[0], a[1], a[2]}, {a[3], a[4], a[5]}};
  }
  std::array<double, 6> to_array() const {
    return {force.x, force.y, force.z, torque.x, torque.y, torque.z};
  }
  Wrench6 operator+(const Wrench6& o) const { return {force + o.force, torque + o.torque}; }
  bool is_finite() const { return force.is_finite() && torque.is_finite(); }
  bool operator==(const Wrench6&) const = default;
};

// ----------------------------------------------------------------------------
// Frame3: right-handed orthonormal triad (u, w, n) anchored at origin.

class Frame3 {
 public:
  Frame3() = default;

  /// Builds n = normal, u = tangential part of `reference`, w = n x u.
  /// Throws GeometryFault when `reference` is parallel to `normal`.
  static Frame3 from_normal_and_reference(const Vec3& origin, const Vec3& normal,
                                          const Vec3& reference);

  const Vec3& origin() const { return origin_; }
  const Vec3& u() const { return u_; }
  const Vec3& w() const { return w_; }
  const Vec3& n() const { return n_; }

  Vec3 to_local(const Vec3& direction) const {
    return {direction.dot(u_), direction.dot(w_), direction.dot(n_)};
  }
  Vec3 to_world(const Vec3& local) const { return u_ * local.x + w_ * local.y + n_ * local.z; }

  /// True when the triad is orthonormal and right handed within `tol`.
  bool is_valid(double tol = 1e-9) const;

 private:
  Frame3(const Vec3& origin, const Vec3& u, const Vec3& w, const Vec3& n)
      : origin_(origin), u_(u), w_(w), n_(n) {}

  Vec3 origin_;
  Vec3 u_ = Vec3::unit_x();
  Vec3 w_ = Vec3::unit_y();
  Vec3 n_ = Vec3::unit_z();
};

}  // namespace gds
