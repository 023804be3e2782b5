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

// Six decoupled mass-damper admittance filters, Y(s) = 1 / (m s + b), one
// per task-space degree of freedom (vx, vy, vz, wx, wy, wz), together with
// the phase-dependent gain table and the linear damping ramp between phases.

#pragma once

#include <array>
#include <cstddef>
#include <optional>

#include "gds/math.hpp"
#include "gds/phase.hpp"

namespace gds {

inline constexpr std::size_t kNumDofs = 6;

struct DofGains {
  double mass = 1.0;     // kg or kg m^2
  double damping = 1.0;  // N s/m or N m s

  bool is_valid() const { return mass > 0.0 && damping > 0.0; }
  double time_constant() const { return mass / damping; }
  bool operator==(const DofGains&) const = default;
};

/// Per-DoF gains; an empty slot means the DoF is disabled ("--" in the gain
/// table). `axial_only` marks the drilling configuration in which the
/// translational block is further restricted to the drilling axis, leaving
/// a single active DoF.
struct AdmittanceParams {
  std::array<std::optional<DofGains>, kNumDofs> dofs{};
  bool axial_only = false;

  static AdmittanceParams uniform(const DofGains& translational,
                                  const std::optional<DofGains>& rotational);

  bool enabled(std::size_t dof) const { return dofs[dof].has_value(); }
  /// Number of independently commandable DoFs (1 when axial_only).
  std::size_t active_dof_count() const;
  /// Damping per DoF, 0 for disabled slots.
  std::array<double, kNumDofs> damping() const;
  bool is_valid() const;
  bool operator==(const AdmittanceParams&) const = default;
};

/// Gain table: free motion, close-to-target and drilling rows. Without
/// guidance, every translational DoF switches to the high drilling damping
/// inside the adaptation radius and all six DoFs stay enabled.
AdmittanceParams phase_params(PhaseKind phase, Condition condition);

enum class Discretization {
  /// Exact zero-order-hold solution of m dv/dt + b v = F over one step.
  kExactZoh,
  /// Backward Euler: v+ = (m v + F dt) / (m + b dt).
  kImplicitEuler,
};

/// Filter memory plus parameters. Disabled DoFs always hold zero velocity.
class AdmittanceState {
 public:
  explicit AdmittanceState(const AdmittanceParams& params = {},
                           Discretization method = Discretization::kExactZoh);

  const AdmittanceParams& params() const { return params_; }
  const Twist6& velocity() const { return v_; }
  Discretization method() const { return method_; }

  /// Swaps gains. DoFs that become disabled, or become enabled after being
  /// disabled, have their memory reset to zero.
  void set_params(const AdmittanceParams& params);

  /// Overwrites the filter memory (disabled DoFs are forced to zero).
  void set_velocity(const Twist6& v);
  void reset() { v_ = {}; }

  /// Advances every enabled DoF by `dt` under a constant interaction
  /// wrench and returns the new reference twist. Throws SensorFault on a
  /// non-finite wrench (the state is left untouched) and
  /// std::invalid_argument when dt <= 0.
  Twist6 step(const Wrench6& interaction, double dt);

 private:
  AdmittanceParams params_;
  Twist6 v_;
  Discretization method_;
};

/// Single-DoF update, exposed for tests and for the axial filter.
double admittance_update(const DofGains& gains, double v, double force, double dt,
                         Discretization method);

struct GainSchedule {
  AdmittanceParams start_params;
  AdmittanceParams end_params;
  double ramp_start = 0.0;
  double ramp_duration = 1.0;

  /// Parameters at time `t`; see gains_at.
  AdmittanceParams at(double t) const;
  bool finished(double t) const;
};

/// Holds start_params before ramp_start, end_params from ramp_start +
/// ramp_duration on, and interpolates mass and damping linearly in between
/// (at ramp_start itself shared DoFs still carry their start gains). A DoF
/// missing from either endpoint takes its end value from ramp_start on.
AdmittanceParams gains_at(const GainSchedule& schedule, double t);

}  // namespace gds
