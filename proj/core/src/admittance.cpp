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

#include "gds/admittance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gds/fault.hpp"

namespace gds {
namespace {

// Gain table rows (translational m, b / rotational m, b).
constexpr DofGains kFreeTrans{50.0, 100.0};
constexpr DofGains kFreeRot{10.0, 5.0};
constexpr DofGains kCloseTrans{50.0, 600.0};
constexpr DofGains kCloseRot{10.0, 20.0};
constexpr DofGains kDrillTrans{50.0, 1000.0};

// Slack on the ramp end time so that k * dt sample clocks land on the end
// value instead of one ulp short of it.
constexpr double kRampEndSlack = 1e-9;

double lerp(double a, double b, double s) { return a + (b - a) * s; }

}  // namespace

AdmittanceParams AdmittanceParams::uniform(const DofGains& translational,
                                           const std::optional<DofGains>& rotational) {
  AdmittanceParams p;
  for (std::size_t i = 0; i < 3; ++i) p.dofs[i] = translational;
  for (std::size_t i = 3; i < kNumDofs; ++i) p.dofs[i] = rotational;
  return p;
}

std::size_t AdmittanceParams::active_dof_count() const {
  if (axial_only) return 1;
  return static_cast<std::size_t>(
      std::count_if(dofs.begin(), dofs.end(), [](const auto& d) { return d.has_value(); }));
}

std::array<double, kNumDofs> AdmittanceParams::damping() const {
  std::array<double, kNumDofs> b{};
  for (std::size_t i = 0; i < kNumDofs; ++i) b[i] = dofs[i] ? dofs[i]->damping : 0.0;
  return b;
}

bool AdmittanceParams::is_valid() const {
  return std::all_of(dofs.begin(), dofs.end(),
                     [](const auto& d) { return !d || d->is_valid(); });
}

AdmittanceParams phase_params(PhaseKind phase, Condition condition) {
  if (condition == Condition::kWithoutGuidance) {
    if (phase == PhaseKind::kFreeMotion || phase == PhaseKind::kTargetDone) {
      return AdmittanceParams::uniform(kFreeTrans, kFreeRot);
    }
    // Inside the adaptation radius: high translational damping on all axes,
    // orientation stays free under the close-to-target rotational gains.
    return AdmittanceParams::uniform(kDrillTrans, kCloseRot);
  }
  switch (phase) {
    case PhaseKind::kFreeMotion:
    case PhaseKind::kTargetDone:
      return AdmittanceParams::uniform(kFreeTrans, kFreeRot);
    case PhaseKind::kApproach:
      return AdmittanceParams::uniform(kCloseTrans, kCloseRot);
    case PhaseKind::kAutoAlign:
    case PhaseKind::kConstrainedDrill:
    case PhaseKind::kRetract: {
      auto p = AdmittanceParams::uniform(kDrillTrans, std::nullopt);
      p.axial_only = true;
      return p;
    }
  }
  throw std::logic_error("unhandled phase");
}

double admittance_update(const DofGains& g, double v, double force, double dt,
                         Discretization method) {
  if (method == Discretization::kImplicitEuler) {
    return (g.mass * v + force * dt) / (g.mass + g.damping * dt);
  }
  const double decay = std::exp(-g.damping * dt / g.mass);
  const double steady = force / g.damping;
  return steady + (v - steady) * decay;
}

AdmittanceState::AdmittanceState(const AdmittanceParams& params, Discretization method)
    : params_(params), method_(method) {
  if (!params.is_valid()) throw std::invalid_argument("admittance gains must be positive");
}

void AdmittanceState::set_params(const AdmittanceParams& params) {
  if (!params.is_valid()) throw std::invalid_argument("admittance gains must be positive");
  auto v = v_.to_array();
  for (std::size_t i = 0; i < kNumDofs; ++i) {
    if (!params.enabled(i) || !params_.enabled(i)) v[i] = 0.0;
  }
  v_ = Twist6::from_array(v);
  params_ = params;
}

void AdmittanceState::set_velocity(const Twist6& twist) {
  auto v = twist.to_array();
  for (std::size_t i = 0; i < kNumDofs; ++i) {
    if (!params_.enabled(i)) v[i] = 0.0;
  }
  v_ = Twist6::from_array(v);
}

Twist6 AdmittanceState::step(const Wrench6& interaction, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("admittance step requires dt > 0");
  if (!interaction.is_finite()) {
    throw SensorFault("non-finite interaction wrench rejected by admittance filter");
  }
  const auto f = interaction.to_array();
  auto v = v_.to_array();
  for (std::size_t i = 0; i < kNumDofs; ++i) {
    const auto& gains = params_.dofs[i];
    v[i] = gains ? admittance_update(*gains, v[i], f[i], dt, method_) : 0.0;
  }
  v_ = Twist6::from_array(v);
  return v_;
}

bool GainSchedule::finished(double t) const {
  return t >= ramp_start + ramp_duration - kRampEndSlack;
}

AdmittanceParams GainSchedule::at(double t) const { return gains_at(*this, t); }

AdmittanceParams gains_at(const GainSchedule& schedule, double t) {
  if (!(schedule.ramp_duration > 0.0)) {
    throw std::invalid_argument("ramp duration must be positive");
  }
  if (t < schedule.ramp_start) return schedule.start_params;
  if (schedule.finished(t)) return schedule.end_params;
  const double s = std::max(0.0, (t - schedule.ramp_start) / schedule.ramp_duration);
  AdmittanceParams out = schedule.end_params;
  for (std::size_t i = 0; i < kNumDofs; ++i) {
    const auto& a = schedule.start_params.dofs[i];
    const auto& b = schedule.end_params.dofs[i];
    if (a && b) {
      out.dofs[i] = DofGains{lerp(a->mass, b->mass, s), lerp(a->damping, b->damping, s)};
    }
  }
  return out;
}

}  // namespace gds
