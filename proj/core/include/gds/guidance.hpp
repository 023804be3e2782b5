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

#include "gds/math.hpp"
#include "gds/phase.hpp"
#include "gds/workpiece.hpp"

namespace gds {

struct GuidanceThresholds {
  double adapt_radius = 0.10;    // m, FreeMotion -> Approach
  double release_radius = 0.11;  // m, Approach -> FreeMotion (hysteresis)
  double lock_radius = 0.05;     // m, Approach -> AutoAlign
  double align_duration = 4.0;   // s
  double standoff = 0.05;        // m, tip-to-target distance after alignment

  /// Throws std::invalid_argument on inconsistent values.
  void validate() const;
};

struct PhaseInputs {
  double tip_to_target = 0.0;  // m
  bool depth_reached = false;
  bool retracted = false;
};

/// True when `from -> to` is an allowed edge of the task sequence for the
/// given condition. Self-transitions are always allowed.
bool is_legal_transition(const GuidancePhase& from, const GuidancePhase& to, Condition condition);

/// Throws StateMachineFault unless is_legal_transition(from, to, condition).
void require_legal_transition(const GuidancePhase& from, const GuidancePhase& to,
                              Condition condition);

/// One evaluation of the task state machine. With guidance:
///   FreeMotion -> Approach        distance <= adapt_radius
///   Approach   -> FreeMotion      distance >  release_radius
///   Approach   -> AutoAlign(0)    distance <= lock_radius
///   AutoAlign  -> ConstrainedDrill progress >= 1
///   ConstrainedDrill -> Retract   depth_reached
///   Retract    -> TargetDone      retracted
/// Without guidance there is no alignment phase; Approach -> Retract
/// happens when depth_reached. AutoAlign progress is advanced by the caller
/// (see advance_alignment), never here. At most one edge is taken per call.
GuidancePhase update_phase(const GuidancePhase& phase, const PhaseInputs& inputs,
                           Condition condition, const GuidanceThresholds& thresholds = {});

/// Moves AutoAlign progress forward; throws StateMachineFault when the
/// phase is not AutoAlign or the new progress would decrease.
GuidancePhase advance_alignment(const GuidancePhase& phase, double progress);

struct AlignmentPlan {
  Pose start_pose;
  Pose goal_pose;
  double duration = 4.0;
  Vec3 rotation_axis;       // world frame, unit (zero for pure translation)
  double rotation_angle = 0.0;
};

/// Straight-line move to target - standoff * axis while the tool axis is
/// turned onto the drilling axis by the minimal rotation. Throws
/// GeometryFault on a non-unit or non-finite axis.
AlignmentPlan plan_alignment(const Pose& current, const Vec3& target_point, const Vec3& axis,
                             double standoff = 0.05, double duration = 4.0);

/// As above, taking standoff and duration from `thresholds`. Throws
/// StateMachineFault when `current` is outside the lock radius.
AlignmentPlan plan_alignment(const Pose& current, const DrillTarget& target,
                             const GuidanceThresholds& thresholds = {});

struct AlignmentSample {
  Pose pose;
  Twist6 twist;          // analytic time derivative of the trajectory
  bool clamped = false;  // t was outside [0, duration]
};

/// Smoothstep time scaling s(tau) = 3 tau^2 - 2 tau^3 (zero boundary
/// velocities). t = 0 returns the start pose and t = duration the goal pose
/// exactly.
AlignmentSample sample_alignment(const AlignmentPlan& plan, double t);

/// Keeps only the component of the linear velocity along `axis`; all
/// angular velocity is removed.
Twist6 constrain_twist(const Twist6& v_ref, const Vec3& axis);

}  // namespace gds
