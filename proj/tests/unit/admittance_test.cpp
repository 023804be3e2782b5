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
#include <limits>
#include <random>

#include "doctest.h"
#include "gds/admittance.hpp"
#include "gds/fault.hpp"
#include "oracles.hpp"

using namespace gds;

namespace {

const DofGains kTableSets[] = {
    {50.0, 100.0}, {10.0, 5.0}, {50.0, 600.0}, {10.0, 20.0}, {50.0, 1000.0},
};

AdmittanceParams free_params() { return phase_params(PhaseKind::kFreeMotion, Condition::kWithGuidance); }

}  // namespace

TEST_SUITE("admittance") {
  TEST_CASE("phase_params reproduces the gain table") {
    const auto free = free_params();
    CHECK(free.active_dof_count() == 6);
    for (std::size_t i = 0; i < 3; ++i) CHECK(*free.dofs[i] == DofGains{50, 100});
    for (std::size_t i = 3; i < 6; ++i) CHECK(*free.dofs[i] == DofGains{10, 5});

    const auto approach = phase_params(PhaseKind::kApproach, Condition::kWithGuidance);
    CHECK(approach.damping() == std::array<double, 6>{600, 600, 600, 20, 20, 20});

    const auto drill = phase_params(PhaseKind::kConstrainedDrill, Condition::kWithGuidance);
    CHECK(drill.axial_only);
    CHECK(drill.active_dof_count() == 1);
    CHECK(drill.dofs[0]->damping == 1000.0);
    CHECK(drill.dofs[0]->mass == 50.0);
    for (std::size_t i = 3; i < 6; ++i) CHECK_FALSE(drill.enabled(i));

    const auto manual = phase_params(PhaseKind::kApproach, Condition::kWithoutGuidance);
    for (std::size_t i = 0; i < 3; ++i) CHECK(manual.dofs[i]->damping == 1000.0);
    CHECK_FALSE(manual.axial_only);
  }

  TEST_CASE("mass is the same in every phase") {
    for (auto c : {Condition::kWithGuidance, Condition::kWithoutGuidance}) {
      for (auto p : {PhaseKind::kFreeMotion, PhaseKind::kApproach, PhaseKind::kConstrainedDrill,
                     PhaseKind::kRetract, PhaseKind::kTargetDone}) {
        const auto params = phase_params(p, c);
        for (std::size_t i = 0; i < 6; ++i) {
          if (params.enabled(i)) CHECK(params.dofs[i]->mass == (i < 3 ? 50.0 : 10.0));
        }
      }
    }
  }

  TEST_CASE("implicit Euler first step from rest") {
    const double v = admittance_update({50, 100}, 0.0, 10.0, 0.001, Discretization::kImplicitEuler);
    CHECK(v == doctest::Approx(0.01 / 50.1).epsilon(1e-14));
    CHECK(v == doctest::Approx(1.996e-4).epsilon(1e-3));
    const double analytic = test::first_order_step(50, 100, 10, 0.001);
    CHECK(std::abs(v - analytic) / analytic < 2e-3);
  }

  TEST_CASE("exact hold discretization reproduces the continuous response") {
    for (const auto& g : kTableSets) {
      double v = 0.0;
      const double dt = 0.001;
      const auto n = static_cast<int>(std::ceil(5 * g.time_constant() / dt));
      for (int k = 1; k <= n; ++k) {
        v = admittance_update(g, v, 10.0, dt, Discretization::kExactZoh);
        const double ref = test::first_order_step(g.mass, g.damping, 10.0, k * dt);
        CHECK(std::abs(v - ref) <= 1e-9 * ref);
      }
    }
  }

  // Implicit Euler is first-order accurate: to leading order its error is
  // (dt / 2 tau) (t / tau) exp(-t / tau) F / b, peaking at t = tau. For the
  // short time constants (tau = 50 ms) this is about 3.7e-3 F/b, which is why
  // the exact discretization is the default.
  TEST_CASE("implicit Euler error follows the first-order bound") {
    for (const auto& g : kTableSets) {
      double v = 0.0;
      const double dt = 0.001;
      double worst = 0.0;
      const auto n = static_cast<int>(std::ceil(5 * g.time_constant() / dt));
      for (int k = 1; k <= n; ++k) {
        v = admittance_update(g, v, 10.0, dt, Discretization::kImplicitEuler);
        worst = std::max(worst,
                         std::abs(v - test::first_order_step(g.mass, g.damping, 10.0, k * dt)));
      }
      const double bound = 0.5 * std::exp(-1.0) * (dt / g.time_constant()) * (10.0 / g.damping);
      CHECK(worst <= 1.05 * bound);
      CHECK(worst >= 0.9 * bound);
    }
  }

  TEST_CASE("zero input keeps zero output and steady state is F/b") {
    for (auto method : {Discretization::kExactZoh, Discretization::kImplicitEuler}) {
      AdmittanceState s(free_params(), method);
      for (int k = 0; k < 1000; ++k) s.step({}, 0.001);
      CHECK(s.velocity() == Twist6{});

      AdmittanceState f(free_params(), method);
      for (int k = 0; k < 5000; ++k) f.step({{10, 0, 0}, {}}, 0.001);
      CHECK(std::abs(f.velocity().linear.x - 0.1) <= 1e-4);
    }
  }

  TEST_CASE("distance to steady state never grows") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> mass(0.1, 100), damp(0.1, 2000), force(-50, 50),
        dt(1e-5, 2.0), v0(-2, 2);
    for (auto method : {Discretization::kExactZoh, Discretization::kImplicitEuler}) {
      for (int trial = 0; trial < 200; ++trial) {
        const DofGains g{mass(rng), damp(rng)};
        const double f = force(rng);
        const double h = dt(rng);
        double v = v0(rng);
        double gap = std::abs(v - f / g.damping);
        for (int k = 0; k < 50; ++k) {
          v = admittance_update(g, v, f, h, method);
          const double next = std::abs(v - f / g.damping);
          CHECK(next <= gap + 1e-15);
          gap = next;
        }
      }
    }
  }

  TEST_CASE("DoFs are decoupled") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> f(-20, 20);
    for (int trial = 0; trial < 50; ++trial) {
      std::array<double, 6> base{};
      for (auto& x : base) x = f(rng);
      for (std::size_t i = 0; i < 6; ++i) {
        auto perturbed = base;
        perturbed[i] += 7.5;
        AdmittanceState a(free_params());
        AdmittanceState b(free_params());
        for (int k = 0; k < 20; ++k) {
          a.step(Wrench6::from_array(base), 0.001);
          b.step(Wrench6::from_array(perturbed), 0.001);
        }
        for (std::size_t j = 0; j < 6; ++j) {
          if (j != i) CHECK(a.velocity()[j] == b.velocity()[j]);
        }
        CHECK(a.velocity()[i] != b.velocity()[i]);
      }
    }
  }

  TEST_CASE("disabled DoFs output exactly zero and reset on re-enable") {
    AdmittanceState s(free_params());
    for (int k = 0; k < 100; ++k) s.step({{1, 2, 3}, {4, 5, 6}}, 0.001);
    CHECK(s.velocity().angular.x != 0.0);

    s.set_params(phase_params(PhaseKind::kConstrainedDrill, Condition::kWithGuidance));
    CHECK(s.velocity().angular == Vec3{});
    for (int k = 0; k < 100; ++k) {
      s.step({{1, 2, 3}, {1e6, -1e6, 1e9}}, 0.001);
      CHECK(s.velocity().angular == Vec3{});
    }
    s.set_velocity({{0.1, 0.1, 0.1}, {1, 1, 1}});
    CHECK(s.velocity().angular == Vec3{});

    s.set_params(free_params());
    CHECK(s.velocity().angular == Vec3{});
    CHECK(s.velocity().linear.x != 0.0);  // still-enabled DoFs keep their memory
  }

  TEST_CASE("non-finite wrench is rejected and leaves the state untouched") {
    AdmittanceState s(free_params());
    s.step({{1, 0, 0}, {}}, 0.001);
    const Twist6 before = s.velocity();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(s.step({{nan, 0, 0}, {}}, 0.001), SensorFault);
    CHECK_THROWS_AS(s.step({{}, {0, std::numeric_limits<double>::infinity(), 0}}, 0.001),
                    SensorFault);
    CHECK(s.velocity() == before);
    CHECK_THROWS_AS(s.step({}, 0.0), std::invalid_argument);
  }

  TEST_CASE("invalid gains are rejected") {
    AdmittanceParams p = free_params();
    p.dofs[2] = DofGains{0.0, 1.0};
    CHECK_THROWS_AS(AdmittanceState{p}, std::invalid_argument);
    p.dofs[2] = DofGains{1.0, -1.0};
    AdmittanceState s(free_params());
    CHECK_THROWS_AS(s.set_params(p), std::invalid_argument);
  }

  TEST_CASE("gains_at: endpoints and linear interior") {
    const auto free = free_params();
    auto near = free;
    for (std::size_t i = 0; i < 3; ++i) near.dofs[i]->damping = 600;
    const GainSchedule ramp{free, near, 2.0, 1.0};
    CHECK(gains_at(ramp, 2.0) == free);
    CHECK(gains_at(ramp, 1.0) == free);
    CHECK(gains_at(ramp, 2.5).dofs[0]->damping == 350.0);
    CHECK(gains_at(ramp, 3.0) == near);
    CHECK(gains_at(ramp, 10.0) == near);

    auto high = free;
    for (std::size_t i = 0; i < 3; ++i) high.dofs[i]->damping = 1000;
    CHECK(gains_at({near, high, 0.0, 1.0}, 0.25).dofs[1]->damping == 700.0);
    CHECK_THROWS_AS(gains_at({near, high, 0.0, 0.0}, 0.5), std::invalid_argument);
  }

  TEST_CASE("gains_at: DoFs switched on or off follow the new phase at once") {
    const auto drill = phase_params(PhaseKind::kConstrainedDrill, Condition::kWithGuidance);
    const auto free = free_params();
    const GainSchedule on{drill, free, 5.0, 1.0};
    CHECK(gains_at(on, 4.999) == drill);
    const auto first = gains_at(on, 5.0);
    for (std::size_t i = 0; i < 3; ++i) CHECK(first.dofs[i] == drill.dofs[i]);
    for (std::size_t i = 3; i < 6; ++i) CHECK(first.dofs[i] == free.dofs[i]);
    CHECK_FALSE(first.axial_only);

    const auto off = gains_at({free, drill, 5.0, 1.0}, 5.0);
    for (std::size_t i = 3; i < 6; ++i) CHECK_FALSE(off.enabled(i));
    CHECK(off.axial_only);
  }

  TEST_CASE("gains_at is continuous and monotone between endpoints") {
    const auto a = free_params();
    const auto b = phase_params(PhaseKind::kApproach, Condition::kWithGuidance);
    const GainSchedule ramp{a, b, 0.0, 1.0};
    std::array<double, 6> prev = a.damping();
    for (int k = 1; k <= 1200; ++k) {
      const auto cur = gains_at(ramp, k * 0.001).damping();
      for (std::size_t i = 0; i < 6; ++i) {
        CHECK(cur[i] >= prev[i]);
        CHECK(cur[i] - prev[i] <= (b.damping()[i] - a.damping()[i]) * 0.001 + 1e-9);
      }
      prev = cur;
    }
    CHECK(prev == b.damping());
  }
}
