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

#include <cmath>
#include <random>

#include "doctest.h"
#include "gds/fault.hpp"
#include "gds/math.hpp"
#include "oracles.hpp"

using namespace gds;
using gds::test::dist;

namespace {

bool quat_ok(const UnitQuat& q) {
  const double n = std::sqrt(q.w() * q.w() + q.x() * q.x() + q.y() * q.y() + q.z() * q.z());
  return std::abs(n - 1.0) <= 1e-9 && q.w() >= 0.0;
}

}  // namespace

TEST_SUITE("math") {
  TEST_CASE("rotate: identity and axis-aligned quarter turn") {
    CHECK(rotate(UnitQuat{}, {1, 2, 3}) == Vec3{1, 2, 3});
    const Vec3 r = rotate(UnitQuat::from_axis_angle(Vec3::unit_z(), kPi / 2), {1, 0, 0});
    CHECK(dist(r, {0, 1, 0}) < 1e-15);
  }

  TEST_CASE("rotate: half turn about x matches the rotation-matrix oracle") {
    const Vec3 expected = test::apply(test::rodrigues(Vec3::unit_x(), kPi), {0, 1, 1});
    const Vec3 got = rotate(UnitQuat::from_axis_angle(Vec3::unit_x(), kPi), {0, 1, 1});
    CHECK(dist(got, expected) < 1e-12);
    CHECK(dist(got, {0, -1, -1}) < 1e-12);
  }

  TEST_CASE("rotate agrees with Rodrigues on random axes and angles") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    for (int i = 0; i < 500; ++i) {
      const Vec3 axis = test::random_unit(rng);
      const double a = ang(rng);
      const Vec3 v = test::random_vec(rng, 2.0);
      CHECK(dist(rotate(UnitQuat::from_axis_angle(axis, a), v),
                 test::apply(test::rodrigues(axis, a), v)) < 1e-12);
    }
  }

  TEST_CASE("rotate is an isometry") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    for (int i = 0; i < 500; ++i) {
      const UnitQuat q = UnitQuat::from_axis_angle(test::random_unit(rng), ang(rng));
      const Vec3 a = test::random_vec(rng, 3.0);
      const Vec3 b = test::random_vec(rng, 3.0);
      CHECK(std::abs(rotate(q, a).norm() - a.norm()) < 1e-9);
      CHECK(std::abs(rotate(q, a).dot(rotate(q, b)) - a.dot(b)) < 1e-9);
    }
  }

  TEST_CASE("quaternion constructors keep unit norm and canonical sign") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ang(-2 * kPi, 2 * kPi);
    for (int i = 0; i < 300; ++i) {
      const UnitQuat a = UnitQuat::from_axis_angle(test::random_unit(rng), ang(rng));
      const UnitQuat b = UnitQuat::from_rotation_vector(test::random_vec(rng, 3.0));
      const UnitQuat c = UnitQuat::from_two_vectors(test::random_unit(rng), test::random_unit(rng));
      CHECK(quat_ok(a));
      CHECK(quat_ok(b));
      CHECK(quat_ok(c));
      CHECK(quat_ok(a * b));
      CHECK(quat_ok(slerp(a, c, 0.3)));
    }
    const UnitQuat neg = UnitQuat::from_components(-0.5, 0.5, 0.5, 0.5);
    CHECK(neg.w() == doctest::Approx(0.5));
    CHECK(neg.x() == doctest::Approx(-0.5));
    CHECK_THROWS_AS(UnitQuat::from_components(0, 0, 0, 0), GeometryFault);
  }

  TEST_CASE("from_two_vectors maps the source onto the target, including antiparallel") {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 300; ++i) {
      const Vec3 a = test::random_unit(rng);
      const Vec3 b = test::random_unit(rng);
      const UnitQuat q = UnitQuat::from_two_vectors(a, b);
      CHECK(dist(rotate(q, a), b) < 1e-12);
      CHECK(std::abs(q.angle() - test::acos_angle(a, b)) < 1e-7);
    }
    const Vec3 a{0.3, -0.4, 0.5};
    const UnitQuat flip = UnitQuat::from_two_vectors(a, -a);
    CHECK(dist(rotate(flip, a.normalized()), -a.normalized()) < 1e-12);
    CHECK(flip.angle() == doctest::Approx(kPi));
  }

  TEST_CASE("slerp: single-axis midpoint, identical endpoints, third of 60 degrees") {
    const UnitQuat z90 = UnitQuat::from_axis_angle(Vec3::unit_z(), deg2rad(90));
    const UnitQuat mid = slerp(UnitQuat{}, z90, 0.5);
    CHECK(angular_distance(mid, UnitQuat::from_axis_angle(Vec3::unit_z(), deg2rad(45))) < 1e-12);

    const UnitQuat q = UnitQuat::from_axis_angle({1, 2, 3}, 0.9);
    CHECK(angular_distance(slerp(q, q, 0.7), q) < 1e-12);

    // Oracle: rotation by t * 60 degrees about x through Rodrigues.
    const UnitQuat third = slerp(UnitQuat{}, UnitQuat::from_axis_angle(Vec3::unit_x(), deg2rad(60)),
                                 1.0 / 3.0);
    const auto r = test::rodrigues(Vec3::unit_x(), deg2rad(20));
    for (const Vec3 v : {Vec3{0, 1, 0}, Vec3{0, 0, 1}, Vec3{1, 1, 1}}) {
      CHECK(dist(rotate(third, v), test::apply(r, v)) < 1e-12);
    }
  }

  TEST_CASE("slerp: endpoints are exact and the angle grows linearly") {
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> ang(0.0, 3.0);
    for (int i = 0; i < 100; ++i) {
      const UnitQuat q0 = UnitQuat::from_axis_angle(test::random_unit(rng), ang(rng));
      const UnitQuat q1 = UnitQuat::from_axis_angle(test::random_unit(rng), ang(rng));
      CHECK(slerp(q0, q1, 0.0) == q0);
      CHECK(slerp(q0, q1, 1.0) == q1);
      const double total = angular_distance(q0, q1);
      for (int k = 1; k <= 9; ++k) {
        const double t = 0.1 * k;
        CHECK(std::abs(angular_distance(q0, slerp(q0, q1, t)) - t * total) < 1e-9);
      }
    }
  }

  TEST_CASE("slerp across a half turn is deterministic and stays on the rotation axis") {
    const UnitQuat half = UnitQuat::from_axis_angle(Vec3::unit_z(), kPi);
    const UnitQuat a = slerp(UnitQuat{}, half, 0.5);
    const UnitQuat b = slerp(UnitQuat{}, half, 0.5);
    CHECK(a == b);
    CHECK(a.angle() == doctest::Approx(kPi / 2));
    CHECK(std::abs(std::abs(a.vec().normalized().z) - 1.0) < 1e-12);
  }

  TEST_CASE("project_onto_axis: coordinate axis, parallel input, diagonal axis") {
    CHECK(dist(project_onto_axis({0.1, 0.2, 0.3}, Vec3::unit_z()), {0, 0, 0.3}) == 0.0);
    const Vec3 axis = Vec3{1, 2, 2} / 3.0;
    CHECK(dist(project_onto_axis(axis * 4.0, axis), axis * 4.0) < 1e-15);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(dist(project_onto_axis({3, 4, 0}, {r, r, 0}), {3.5, 3.5, 0}) < 1e-12);
  }

  TEST_CASE("project_onto_axis is idempotent, linear and leaves an orthogonal residual") {
    std::mt19937_64 rng(16);
    for (int i = 0; i < 300; ++i) {
      const Vec3 axis = test::random_unit(rng);
      const Vec3 a = test::random_vec(rng, 5.0);
      const Vec3 b = test::random_vec(rng, 5.0);
      const Vec3 p = project_onto_axis(a, axis);
      CHECK(dist(project_onto_axis(p, axis), p) < 1e-12);
      CHECK(dist(project_onto_axis(a * 2.5 + b, axis),
                 project_onto_axis(a, axis) * 2.5 + project_onto_axis(b, axis)) < 1e-12);
      CHECK(std::abs((a - p).dot(axis)) < 1e-12);
    }
  }

  TEST_CASE("angle_between: equal, orthogonal, and a constructed 5 degree pair") {
    CHECK(angle_between({0.6, 0.8, 0}, {0.6, 0.8, 0}) == 0.0);
    CHECK(angle_between({1, 0, 0}, {0, 1, 0}) == doctest::Approx(kPi / 2).epsilon(1e-15));
    const Vec3 b = rotate(UnitQuat::from_axis_angle(Vec3::unit_z(), deg2rad(5)), {1, 0, 0});
    CHECK(std::abs(angle_between({1, 0, 0}, b) - deg2rad(5)) < 1e-12);
    CHECK(angle_between({1, 0, 0}, b) == doctest::Approx(0.08727).epsilon(1e-4));
    CHECK(angle_between({1, 0, 0}, {-1, 0, 0}) == doctest::Approx(kPi));
  }

  TEST_CASE("angle_between resolves tiny angles") {
    for (double a : {1e-6, 1e-8, 1e-10}) {
      const Vec3 b{std::cos(a), std::sin(a), 0};
      CHECK(std::abs(angle_between({1, 0, 0}, b) - a) < 1e-15);
    }
  }

  TEST_CASE("Frame3 is orthonormal and right handed for random inputs") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 500; ++i) {
      const Vec3 n = test::random_unit(rng);
      const Vec3 ref = test::random_vec(rng, 3.0);
      if (std::abs(n.dot(ref.normalized())) >= 1 - 1e-6) continue;
      const Frame3 f = Frame3::from_normal_and_reference({}, n, ref);
      CHECK(f.is_valid());
      CHECK(std::abs(test::det3(f.u(), f.w(), f.n()) - 1.0) < 1e-9);
      CHECK(std::abs(f.u().dot(f.w())) < 1e-9);
      CHECK(std::abs(f.u().dot(f.n())) < 1e-9);
      CHECK(std::abs(f.w().dot(f.n())) < 1e-9);
      CHECK(dist(f.u().cross(f.w()), f.n()) < 1e-9);
    }
    CHECK_THROWS_AS(Frame3::from_normal_and_reference({}, Vec3::unit_z(), {0, 0, 3}),
                    GeometryFault);
  }
}
