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
#include <vector>

#include "doctest.h"
#include "gds/operator_env.hpp"
#include "oracles.hpp"

using namespace gds;
using gds::test::dist;

namespace {

TriangleMesh flat_square() {
  TriangleMesh m;
  m.vertices = {{-1, -1, 0}, {1, -1, 0}, {1, 1, 0}, {-1, 1, 0}};
  m.triangles = {{0, 1, 2}, {0, 2, 3}};
  return m;
}

// Perpendicular target at the origin of the z = 0 plane; material below.
DrillTarget flat_target(double phi = 0.0, double theta = 0.0) {
  return make_target(flat_square(), {0, 0, 0}, phi, theta);
}

Pose bit_pose(const Vec3& tip, const Vec3& axis) {
  return {tip, UnitQuat::from_two_vectors(Vec3::unit_z(), axis)};
}

// Net work done by the environment on the tool along a prescribed dip into
// the surface and back out, using trapezoidal integration of F . v.
double contact_cycle_work(const EnvironmentModel& env, const Vec3& lateral_offset, double depth,
                          double period, double dt) {
  const Surface surface = flat_square();
  const DrillTarget target = flat_target();
  const Vec3 down{0, 0, -1};
  const double start = 0.02;
  const double amplitude = start + depth;
  const auto n = static_cast<int>(std::lround(period / dt));
  double work = 0.0;
  double prev_power = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double t = k * dt;
    const double z = start - amplitude * std::sin(kPi * t / period);
    const double vz = -amplitude * (kPi / period) * std::cos(kPi * t / period);
    const Pose tip = bit_pose(lateral_offset + Vec3{0, 0, z}, down);
    const Twist6 twist{{0, 0, vz}, {}};
    const auto r = environment_wrench(env, tip, twist, surface, target, HoleState{}, 0.0);
    const double power = r.wrench.force.dot(twist.linear);
    if (k > 0) work += 0.5 * (power + prev_power) * dt;
    prev_power = power;
  }
  return work;
}

}  // namespace

TEST_SUITE("operator_env") {
  TEST_CASE("guided pull saturates at the force cap") {
    const OperatorModel model;
    const Wrench6 w = guided_pull(model, Pose{}, Twist6{}, {0.3, 0, 0});
    CHECK(dist(w.force, {40, 0, 0}) < 1e-12);
    CHECK(w.torque == Vec3{});
    const Wrench6 small = guided_pull(model, Pose{}, Twist6{}, {0.1, 0, 0});
    CHECK(dist(small.force, {20, 0, 0}) < 1e-12);
    const Wrench6 damped = guided_pull(model, Pose{}, {{0.25, 0, 0}, {}}, {0.1, 0, 0});
    CHECK(dist(damped.force, {10, 0, 0}) < 1e-12);
  }

  TEST_CASE("operators keep their hands off during alignment") {
    for (auto variant : {OperatorVariant::kGuided, OperatorVariant::kManualAlign}) {
      OperatorModel model;
      model.variant = variant;
      OperatorAgent agent(model, Condition::kWithGuidance, {flat_target(30, 10)});
      for (int k = 0; k < 100; ++k) {
        OperatorInput in;
        in.t = 1.0 + 0.01 * k;
        in.pose = bit_pose({0.01, 0.02, 0.04}, {0, 0, 1});
        in.phase = GuidancePhase::auto_align(0.01 * k);
        CHECK(agent.wrench(in) == Wrench6{});
      }
    }
  }

  TEST_CASE("reaction delay after grabbing") {
    OperatorModel model;
    model.variant = OperatorVariant::kGuided;
    OperatorAgent agent(model, Condition::kWithGuidance, {flat_target()});
    OperatorInput in;
    in.pose = bit_pose({0.3, 0, 0.2}, {0, 0, -1});
    in.phase = GuidancePhase::free_motion();
    in.t = 0.1;
    CHECK(agent.wrench(in) == Wrench6{});
    in.t = 0.3;
    CHECK(agent.wrench(in).force.norm() > 0.0);
    in.phase = GuidancePhase::constrained_drill();
    in.t = 10.0;
    CHECK(agent.wrench(in) == Wrench6{});
    in.t = 10.3;
    CHECK(dist(agent.wrench(in).force, flat_target().axis * 25.0) < 1e-12);
  }

  TEST_CASE("operator variant resolution") {
    CHECK(resolve_variant(OperatorVariant::kAuto, Condition::kWithGuidance) ==
          OperatorVariant::kGuided);
    CHECK(resolve_variant(OperatorVariant::kAuto, Condition::kWithoutGuidance) ==
          OperatorVariant::kManualAlign);
    CHECK(resolve_variant(OperatorVariant::kGuided, Condition::kWithoutGuidance) ==
          OperatorVariant::kGuided);
  }

  TEST_CASE("beliefs: seeded, noiseless limit exact") {
    const std::vector<DrillTarget> targets{flat_target(5, 0), flat_target(30, 10),
                                           flat_target(45, 10)};
    OperatorModel model;
    model.seed = 7;
    const auto a = draw_beliefs(model, targets);
    const auto b = draw_beliefs(model, targets);
    REQUIRE(a.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(a[i].phi_deg == b[i].phi_deg);
      CHECK(a[i].theta_deg == b[i].theta_deg);
      CHECK(a[i].phi_deg >= 0.0);
      CHECK(a[i].phi_deg <= 90.0);
      CHECK(std::abs(a[i].axis.norm() - 1.0) < 1e-12);
    }
    model.seed = 8;
    CHECK(draw_beliefs(model, targets)[1].phi_deg != a[1].phi_deg);

    model.angular_noise = 0.0;
    for (const auto& [belief, target] : {std::pair{draw_beliefs(model, targets)[2], targets[2]}}) {
      CHECK(belief.phi_deg == target.phi_deg);
      CHECK(belief.theta_deg == target.theta_deg);
      CHECK(dist(belief.axis, target.axis) < 1e-15);
    }
  }

  TEST_CASE("same seed gives the same wrench stream; caps always hold") {
    const std::vector<DrillTarget> targets{flat_target(30, 10)};
    OperatorModel model;
    model.variant = OperatorVariant::kManualAlign;
    model.seed = 3;
    OperatorAgent a(model, Condition::kWithoutGuidance, targets);
    OperatorAgent b(model, Condition::kWithoutGuidance, targets);
    std::mt19937_64 rng(51);
    const GuidancePhase phases[] = {GuidancePhase::free_motion(), GuidancePhase::approach(),
                                    GuidancePhase::retract()};
    for (int k = 0; k < 3000; ++k) {
      OperatorInput in;
      in.t = 0.001 * k;
      in.pose = {test::random_vec(rng, 0.5),
                 UnitQuat::from_rotation_vector(test::random_vec(rng, 3.0))};
      in.twist = {test::random_vec(rng, 1.0), test::random_vec(rng, 5.0)};
      in.phase = phases[(k / 700) % 3];
      const Wrench6 wa = a.wrench(in);
      const Wrench6 wb = b.wrench(in);
      CHECK(wa == wb);
      CHECK(wa.force.norm() <= model.force_cap * (1 + 1e-12));
      CHECK(wa.torque.norm() <= model.torque_cap * (1 + 1e-12));
    }
  }

  TEST_CASE("model validation") {
    OperatorModel m;
    m.k_p = -1;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m = OperatorModel{};
    m.force_cap = 0;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    EnvironmentModel e;
    e.cut_resistance = -1;
    CHECK_THROWS_AS(e.validate(), std::invalid_argument);
  }

  TEST_CASE("environment: free space, cutting face, rectified feed") {
    const EnvironmentModel env;
    const Surface surface = flat_square();
    const DrillTarget target = flat_target();
    const Vec3 down = target.axis;
    CHECK(dist(down, {0, 0, -1}) < 1e-15);

    const auto above = environment_wrench(env, bit_pose({0.2, 0.1, 0.02}, down),
                                          {{0, 0, -0.01}, {}}, surface, target, {}, 25.0);
    CHECK(above.wrench == Wrench6{});
    CHECK_FALSE(above.collision);

    const auto cutting = environment_wrench(env, bit_pose({0, 0, 0}, down),
                                            {{0, 0, -0.002}, {}}, surface, target, {}, 25.0);
    CHECK(dist(cutting.wrench.force, {0, 0, 1.6}) < 1e-12);

    const auto stalled = environment_wrench(env, bit_pose({0, 0, 0}, down),
                                            {{0, 0, -0.002}, {}}, surface, target, {}, 2.0);
    CHECK(dist(stalled.wrench.force, {0, 0, 16.0}) < 1e-12);

    HoleState engaged;
    engaged.depth = 0.004;
    engaged.engaged = engaged.started = true;
    engaged.axis = down;
    for (double feed : {0.0, -0.003}) {
      const auto r = environment_wrench(env, bit_pose({0, 0, -0.004}, down), {{0, 0, -feed}, {}},
                                        surface, target, engaged, 25.0);
      CHECK(r.wrench == Wrench6{});
    }
  }

  TEST_CASE("environment: off-target penalty contact never pulls and flags collisions") {
    const EnvironmentModel env;
    const Surface surface = flat_square();
    const DrillTarget target = flat_target();
    const Vec3 down{0, 0, -1};

    const auto rest = environment_wrench(env, bit_pose({0.3, 0, -0.001}, down), {}, surface,
                                         target, {}, 0.0);
    CHECK(dist(rest.wrench.force, {0, 0, 50.0}) < 1e-9);
    CHECK(rest.off_target_penetration == doctest::Approx(0.001));
    CHECK_FALSE(rest.collision);

    const auto leaving = environment_wrench(env, bit_pose({0.3, 0, -0.001}, down),
                                            {{0, 0, 1.0}, {}}, surface, target, {}, 0.0);
    CHECK(leaving.wrench == Wrench6{});

    const auto deep = environment_wrench(env, bit_pose({0.3, 0, -0.006}, down), {}, surface,
                                         target, {}, 0.0);
    CHECK(deep.collision);
  }

  TEST_CASE("environment: contact cycles are passive") {
    EnvironmentModel env;
    for (double damping : {200.0, 0.0}) {
      env.contact_damping = damping;
      for (double depth : {0.001, 0.003, 0.008}) {
        for (double period : {0.5, 2.0}) {
          CHECK(contact_cycle_work(env, {0.3, 0.1, 0}, depth, period, 0.001) <= 1e-6);
        }
      }
    }
  }

  TEST_CASE("drill site location") {
    const EnvironmentModel env;
    const DrillTarget target = flat_target();
    const auto site = locate_drill_site(env, {0.003, 0, -0.002}, target, {}, {0, 0, -1});
    CHECK(site.in_region);
    CHECK(site.at_face);
    CHECK(site.axial == doctest::Approx(0.002));
    CHECK(site.lateral == doctest::Approx(0.003));
    CHECK_FALSE(locate_drill_site(env, {0.006, 0, -0.002}, target, {}, {0, 0, -1}).in_region);
    CHECK_FALSE(locate_drill_site(env, {0.0, 0, 0.01}, target, {}, {0, 0, -1}).in_region);
  }

  TEST_CASE("update_hole: integration, threshold, no un-drilling") {
    const EnvironmentModel env;
    const HoleState h0;
    CHECK(update_hole(env, h0, 0.001, 25.0, 1.0).depth == doctest::Approx(0.001));
    CHECK(update_hole(env, h0, 0.001, 25.0, 1.0).engaged);
    CHECK(update_hole(env, h0, 0.001, 2.0, 1.0).depth == 0.0);
    HoleState h;
    h.depth = 0.004;
    CHECK(update_hole(env, h, -0.01, 25.0, 1.0).depth == 0.004);
    CHECK_THROWS_AS(update_hole(env, h, 0.001, 25.0, 0.0), std::invalid_argument);

    std::mt19937_64 rng(52);
    std::uniform_real_distribution<double> feed(-0.01, 0.01), force(0.0, 40.0);
    for (int k = 0; k < 1000; ++k) {
      const HoleState next = update_hole(env, h, feed(rng), force(rng), 0.001);
      CHECK(next.depth >= h.depth);
      h = next;
    }
  }
}
