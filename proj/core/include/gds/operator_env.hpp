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

// Stand-ins for the human operator and the workpiece: wrench generators that
// close the interaction loop around the admittance controller.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gds/math.hpp"
#include "gds/phase.hpp"
#include "gds/workpiece.hpp"

namespace gds {

enum class OperatorVariant {
  kAuto,         // Guided with guidance, ManualAlign without
  kGuided,       // relies on the robot for alignment
  kManualAlign,  // aligns the drill by hand, with a persistent angular bias
};

struct OperatorModel {
  OperatorVariant variant = OperatorVariant::kAuto;
  double k_p = 200.0;              // N/m, pull towards the current waypoint
  double k_d = 40.0;               // N s/m
  double torque_k_p = 8.0;         // N m/rad, ManualAlign only
  double torque_k_d = 2.0;         // N m s/rad, ManualAlign only
  double reaction_delay = 0.25;    // s, hands-off time after (re)grabbing
  double angular_noise = 6.0;      // deg, std-dev of the ManualAlign bias
  double force_cap = 40.0;         // N
  double torque_cap = 5.0;         // N m
  double push_force = 25.0;        // N, axial thrust while drilling
  double retract_force = 25.0;     // N, axial pull while retracting
  double guided_offset = 0.03;     // m, Guided waypoint distance before the target
  double manual_offset = 0.05;     // m, ManualAlign pre-drill waypoint; matches the guided standoff
  double settle_position = 0.002;  // m
  double settle_angle = 0.05;      // deg
  double settle_speed = 0.002;     // m/s
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument on negative gains or non-positive caps.
  void validate() const;
};

OperatorVariant resolve_variant(OperatorVariant v, Condition condition);

struct EnvironmentModel {
  double contact_stiffness = 5e4;   // N/m
  double contact_damping = 200.0;   // N s/m
  double cut_resistance = 800.0;    // N s/m, opposes feed at the cutting face
  double stall_damping = 8000.0;    // N s/m, face resistance while thrust is too low to cut
  double thrust_threshold = 5.0;    // N
  double hole_depth_goal = 0.010;   // m
  double capture_radius = 0.005;    // m, lateral tolerance of the drilling site
  double collision_depth = 0.005;   // m, off-target penetration flagged as collision

  void validate() const;
};

struct HoleState {
  double depth = 0.0;  // m along `axis`
  bool engaged = false;
  bool started = false;
  Vec3 axis;  // hole direction, fixed at the first cut
};

// ----------------------------------------------------------------------------
// Operator

/// Per-target bias of a ManualAlign operator: the (phi, theta) it believes
/// to be right, and the resulting axis.
struct OperatorBelief {
  double phi_deg = 0.0;
  double theta_deg = 0.0;
  Vec3 axis;
};

/// Draws one belief per target from N(0, angular_noise) perturbations of
/// phi and theta. Same seed, same beliefs.
std::vector<OperatorBelief> draw_beliefs(const OperatorModel& model,
                                         std::span<const DrillTarget> targets);

struct OperatorInput {
  double t = 0.0;
  Pose pose;
  Twist6 twist;
  GuidancePhase phase;
  std::size_t target_index = 0;
  HoleState hole;
};

/// Stateful operator. Guided: PD pull towards a waypoint on the drilling
/// axis inside the lock radius, hands off during AutoAlign, axial push and
/// pull afterwards. ManualAlign: PD pull towards its own pre-drill waypoint
/// plus a PD torque towards its believed axis; once settled it pushes along
/// the tool axis while holding the tip on the believed line.
class OperatorAgent {
 public:
  OperatorAgent(const OperatorModel& model, Condition condition,
                std::vector<DrillTarget> targets);

  Wrench6 wrench(const OperatorInput& in);

  OperatorVariant variant() const { return variant_; }
  const std::vector<OperatorBelief>& beliefs() const { return beliefs_; }

 private:
  enum class Stage { kAlign, kPush };

  Wrench6 guided(const OperatorInput& in, const DrillTarget& target) const;
  Wrench6 manual(const OperatorInput& in, const DrillTarget& target);
  Wrench6 clamp(Wrench6 w) const;

  OperatorModel model_;
  OperatorVariant variant_;
  std::vector<DrillTarget> targets_;
  std::vector<OperatorBelief> beliefs_;
  Stage stage_ = Stage::kAlign;
  std::size_t last_target_ = 0;
  PhaseKind last_phase_ = PhaseKind::kFreeMotion;
  double grab_time_ = 0.0;
};

/// Stateless Guided law for free motion: PD towards `waypoint`, force
/// clamped to the cap.
Wrench6 guided_pull(const OperatorModel& model, const Pose& pose, const Twist6& twist,
                    const Vec3& waypoint);

// ----------------------------------------------------------------------------
// Environment

struct DrillSite {
  double axial = 0.0;    // m, tip position along the hole axis, 0 at the surface
  double lateral = 0.0;  // m, tip distance from the hole axis
  Vec3 axis;
  bool in_region = false;  // laterally captured and not in front of the surface
  bool at_face = false;    // at or beyond the current cutting face
};

/// Locates the tip relative to the drilling site. Before the first cut the
/// hole axis is `bit_axis`.
DrillSite locate_drill_site(const EnvironmentModel& env, const Vec3& tip,
                            const DrillTarget& target, const HoleState& hole,
                            const Vec3& bit_axis);

struct EnvironmentResult {
  Wrench6 wrench;
  double off_target_penetration = 0.0;  // m, >= 0
  bool collision = false;
};

/// Contact wrench on the tool. Off the drilling site: unilateral penalty
/// spring-damper along the outward normal (never pulls). At the cutting
/// face: viscous resistance against positive feed only.
EnvironmentResult environment_wrench(const EnvironmentModel& env, const Pose& tip,
                                     const Twist6& twist, const Surface& surface,
                                     const DrillTarget& target, const HoleState& hole,
                                     double operator_thrust);

/// Deepens the hole by feed * dt when the axial thrust reaches the
/// threshold and the feed is positive; never decreases the depth.
HoleState update_hole(const EnvironmentModel& env, const HoleState& hole, double axial_feed,
                      double axial_force, double dt);

}  // namespace gds
