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
#include <stdexcept>
#include <random>

#include "doctest.h"
#include "gds/fault.hpp"
#include "gds/guidance.hpp"
#include "oracles.hpp"

using namespace gds;
using gds::test::dist;

namespace {

constexpr auto kWith = Condition::kWithGuidance;
constexpr auto kWithout = Condition::kWithoutGuidance;

GuidancePhase step_phase(const GuidancePhase& p, double d, bool depth = false,
                         bool retracted = false, Condition c = kWith) {
  return update_phase(p, PhaseInputs{d, depth, retracted}, c);
}

// Pose whose tool axis (local +z) is `axis`.
Pose pose_with_axis(const Vec3& position, const Vec3& axis) {
  return {position, UnitQuat::from_two_vectors(Vec3::unit_z(), axis)};
}

}  // namespace

TEST_SUITE("guidance") {
  TEST_CASE("update_phase: adapt and lock radii") {
    CHECK(step_phase(GuidancePhase::free_motion(), 0.12) == GuidancePhase::free_motion());
    CHECK(step_phase(GuidancePhase::free_motion(), 0.08) == GuidancePhase::approach());
    CHECK(step_phase(GuidancePhase::approach(), 0.04) == GuidancePhase::auto_align(0.0));
    CHECK(step_phase(GuidancePhase::free_motion(), 0.10) == GuidancePhase::approach());
    CHECK(step_phase(GuidancePhase::approach(), 0.05) == GuidancePhase::auto_align(0.0));
  }

  TEST_CASE("update_phase: hysteresis between 0.10 and 0.11") {
    CHECK(step_phase(GuidancePhase::approach(), 0.105) == GuidancePhase::approach());
    CHECK(step_phase(GuidancePhase::approach(), 0.11) == GuidancePhase::approach());
    CHECK(step_phase(GuidancePhase::approach(), 0.1101) == GuidancePhase::free_motion());
    CHECK(step_phase(GuidancePhase::free_motion(), 0.105) == GuidancePhase::free_motion());
  }

  TEST_CASE("update_phase: one edge per call through the full sequence") {
    GuidancePhase p = GuidancePhase::free_motion();
    p = step_phase(p, 0.01);
    CHECK(p.is(PhaseKind::kApproach));
    p = step_phase(p, 0.01);
    CHECK(p == GuidancePhase::auto_align(0.0));
    CHECK(step_phase(p, 0.01, true, true) == p);  // progress is owned by the caller
    p = advance_alignment(p, 0.5);
    p = advance_alignment(p, 1.0);
    p = step_phase(p, 0.05, true, true);
    CHECK(p.is(PhaseKind::kConstrainedDrill));
    CHECK(step_phase(p, 0.05, false, true) == p);
    p = step_phase(p, 0.05, true, true);
    CHECK(p.is(PhaseKind::kRetract));
    CHECK(step_phase(p, 0.0, true, false) == p);
    p = step_phase(p, 0.0, true, true);
    CHECK(p.is(PhaseKind::kTargetDone));
    CHECK(step_phase(p, 0.0, true, true) == p);
  }

  TEST_CASE("update_phase without guidance skips alignment") {
    GuidancePhase p = step_phase(GuidancePhase::free_motion(), 0.03, false, false, kWithout);
    CHECK(p.is(PhaseKind::kApproach));
    CHECK(step_phase(p, 0.0, false, false, kWithout).is(PhaseKind::kApproach));
    p = step_phase(p, 0.0, true, false, kWithout);
    CHECK(p.is(PhaseKind::kRetract));
    CHECK(step_phase(p, 0.06, true, true, kWithout).is(PhaseKind::kTargetDone));
  }

  TEST_CASE("illegal transitions are faults") {
    CHECK_FALSE(is_legal_transition(GuidancePhase::free_motion(), GuidancePhase::auto_align(0), kWith));
    CHECK_FALSE(is_legal_transition(GuidancePhase::approach(), GuidancePhase::auto_align(0), kWithout));
    CHECK_FALSE(is_legal_transition(GuidancePhase::auto_align(0.5), GuidancePhase::constrained_drill(), kWith));
    CHECK_FALSE(is_legal_transition(GuidancePhase::auto_align(0.5), GuidancePhase::auto_align(0.4), kWith));
    CHECK_FALSE(is_legal_transition(GuidancePhase::target_done(), GuidancePhase::free_motion(), kWith));
    CHECK_FALSE(is_legal_transition(GuidancePhase::retract(), GuidancePhase::approach(), kWith));
    CHECK(is_legal_transition(GuidancePhase::approach(), GuidancePhase::free_motion(), kWith));
    CHECK_THROWS_AS(require_legal_transition(GuidancePhase::constrained_drill(),
                                             GuidancePhase::free_motion(), kWith),
                    StateMachineFault);
    CHECK_THROWS_AS(advance_alignment(GuidancePhase::approach(), 0.5), StateMachineFault);
    CHECK_THROWS_AS(advance_alignment(GuidancePhase::auto_align(0.6), 0.5), StateMachineFault);
    CHECK(advance_alignment(GuidancePhase::auto_align(0.6), 1.7).progress == 1.0);
  }

  TEST_CASE("random input streams only ever take legal edges") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> d(0.0, 0.2);
    std::bernoulli_distribution coin(0.1);
    for (auto c : {kWith, kWithout}) {
      GuidancePhase p = GuidancePhase::free_motion();
      for (int k = 0; k < 20000; ++k) {
        GuidancePhase next = update_phase(p, {d(rng), coin(rng), coin(rng)}, c);
        CHECK(is_legal_transition(p, next, c));
        if (next.is(PhaseKind::kAutoAlign)) next = advance_alignment(next, next.progress + 0.25);
        if (next.is(PhaseKind::kTargetDone)) next = GuidancePhase::free_motion();
        p = next;
      }
    }
  }

  TEST_CASE("thresholds validation") {
    CHECK_NOTHROW(GuidanceThresholds{}.validate());
    CHECK_THROWS_AS((GuidanceThresholds{0.10, 0.09, 0.05, 4.0, 0.05}.validate()),
                    std::invalid_argument);
    CHECK_THROWS_AS((GuidanceThresholds{0.10, 0.11, 0.12, 4.0, 0.05}.validate()),
                    std::invalid_argument);
    CHECK_THROWS_AS((GuidanceThresholds{0.10, 0.11, 0.05, 0.0, 0.05}.validate()),
                    std::invalid_argument);
  }

  TEST_CASE("plan_alignment: already aligned is a pure translation") {
    const Pose start = pose_with_axis({0.01, 0.02, -0.03}, {0, 0, 1});
    const AlignmentPlan plan = plan_alignment(start, Vec3{}, Vec3::unit_z());
    CHECK(plan.rotation_angle == 0.0);
    CHECK(angular_distance(plan.goal_pose.orientation, start.orientation) < 1e-12);
    CHECK(dist(plan.goal_pose.position, {0, 0, -0.05}) < 1e-15);
  }

  TEST_CASE("plan_alignment: goal sits the standoff before the target for any start") {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 100; ++i) {
      const Pose start = pose_with_axis(test::random_vec(rng, 0.05), test::random_unit(rng));
      const AlignmentPlan plan = plan_alignment(start, Vec3{}, Vec3::unit_z());
      CHECK(dist(plan.goal_pose.position, {0, 0, -0.05}) < 1e-15);
      CHECK(angle_between(tool_axis(plan.goal_pose), Vec3::unit_z()) < 1e-9);
      CHECK(std::abs(plan.rotation_angle -
                     test::acos_angle(tool_axis(start), Vec3::unit_z())) < 1e-7);
    }
  }

  TEST_CASE("plan_alignment: a 30 degree offset gives a 30 degree plan") {
    const Vec3 axis{0, 0, 1};
    const Vec3 tilted = rotate(UnitQuat::from_axis_angle({1, 1, 0}, deg2rad(30)), axis);
    const AlignmentPlan plan = plan_alignment(pose_with_axis({0, 0.01, -0.04}, tilted), Vec3{}, axis);
    CHECK(plan.rotation_angle == doctest::Approx(deg2rad(30)).epsilon(1e-12));
    CHECK(angle_between(tool_axis(plan.start_pose), tool_axis(plan.goal_pose)) ==
          doctest::Approx(deg2rad(30)).epsilon(1e-12));
    CHECK_THROWS_AS(plan_alignment(plan.start_pose, Vec3{}, Vec3{0, 0, 2}), GeometryFault);
  }

  TEST_CASE("plan_alignment from a target enforces the lock radius") {
    DrillTarget target;
    target.point = {0.5, 0, 0};
    target.axis = Vec3{0, 0, -1};
    target.frame = Frame3::from_normal_and_reference(target.point, target.axis, Vec3::unit_x());
    const Pose near = pose_with_axis({0.5, 0, 0.04}, {0, 0, -1});
    const AlignmentPlan plan = plan_alignment(near, target);
    CHECK(dist(plan.goal_pose.position, {0.5, 0, 0.05}) < 1e-15);
    CHECK(plan.duration == 4.0);
    CHECK_THROWS_AS(plan_alignment(pose_with_axis({0.5, 0, 0.2}, {0, 0, -1}), target),
                    StateMachineFault);
  }

  TEST_CASE("sample_alignment: endpoints exact, midpoint halfway") {
    const Vec3 tilted = rotate(UnitQuat::from_axis_angle(Vec3::unit_x(), deg2rad(30)), Vec3::unit_z());
    const Pose start = pose_with_axis({0.02, 0.0, -0.03}, tilted);
    const AlignmentPlan plan = plan_alignment(start, Vec3{}, Vec3::unit_z());

    const auto s0 = sample_alignment(plan, 0.0);
    CHECK(s0.pose == plan.start_pose);
    CHECK_FALSE(s0.clamped);
    const auto s4 = sample_alignment(plan, 4.0);
    CHECK(s4.pose == plan.goal_pose);
    CHECK_FALSE(s4.clamped);

    const auto mid = sample_alignment(plan, 2.0);
    CHECK(angle_between(tool_axis(start), tool_axis(mid.pose)) ==
          doctest::Approx(deg2rad(15)).epsilon(1e-12));
    const Vec3 half = (plan.start_pose.position + plan.goal_pose.position) * 0.5;
    CHECK(dist(mid.pose.position, half) < 1e-15);

    CHECK(sample_alignment(plan, -1.0).clamped);
    CHECK(sample_alignment(plan, 5.0).clamped);
    CHECK(sample_alignment(plan, 5.0).pose == plan.goal_pose);
  }

  TEST_CASE("sample_alignment twist is the derivative of the sampled pose") {
    const Pose start = pose_with_axis({0.03, -0.01, -0.02}, Vec3{0.3, 0.2, 1}.normalized());
    const AlignmentPlan plan = plan_alignment(start, Vec3{}, Vec3::unit_z());
    const double h = 1e-6;
    for (double t : {0.3, 1.0, 2.0, 3.1, 3.9}) {
      const auto a = sample_alignment(plan, t - h);
      const auto b = sample_alignment(plan, t + h);
      const Vec3 fd = (b.pose.position - a.pose.position) / (2 * h);
      CHECK(dist(fd, sample_alignment(plan, t).twist.linear) < 1e-7);
      const Vec3 omega =
          (b.pose.orientation * a.pose.orientation.conjugate()).rotation_vector() / (2 * h);
      CHECK(dist(omega, sample_alignment(plan, t).twist.angular) < 1e-6);
    }
    CHECK(sample_alignment(plan, 0.0).twist == Twist6{});
    CHECK(sample_alignment(plan, 4.0).twist == Twist6{});
  }

  TEST_CASE("constrain_twist: projection examples and orthogonality") {
    CHECK(constrain_twist({{0.1, 0.2, 0.3}, {1, 1, 1}}, Vec3::unit_z()) ==
          Twist6{{0, 0, 0.3}, {0, 0, 0}});
    const Vec3 axis = Vec3{1, -2, 2} / 3.0;
    const Twist6 axial{axis * 0.02, {}};
    CHECK(dist(constrain_twist(axial, axis).linear, axial.linear) < 1e-15);

    std::mt19937_64 rng(33);
    for (int i = 0; i < 500; ++i) {
      const Vec3 a = test::random_unit(rng);
      const Twist6 out = constrain_twist({test::random_vec(rng, 1.0), test::random_vec(rng, 1.0)}, a);
      CHECK(out.angular == Vec3{});
      const Vec3 perp = out.linear - a * out.linear.dot(a);
      CHECK(perp.norm() < 1e-12);
    }
  }
}
