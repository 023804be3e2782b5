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

#include "gds/guidance.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gds/fault.hpp"

namespace gds {

void GuidanceThresholds::validate() const {
  if (!(lock_radius > 0.0) || !(lock_radius < adapt_radius)) {
    throw std::invalid_argument("lock_radius must be positive and below adapt_radius");
  }
  if (!(release_radius >= adapt_radius)) {
    throw std::invalid_argument("release_radius must not be below adapt_radius");
  }
  if (!(align_duration > 0.0)) throw std::invalid_argument("align_duration must be positive");
  if (!(standoff > 0.0)) throw std::invalid_argument("standoff must be positive");
}

bool is_legal_transition(const GuidancePhase& from, const GuidancePhase& to,
                         Condition condition) {
  using P = PhaseKind;
  if (from.kind == to.kind) {
    return from.kind != P::kAutoAlign || to.progress >= from.progress;
  }
  const bool guided = condition == Condition::kWithGuidance;
  switch (from.kind) {
    case P::kFreeMotion:
      return to.kind == P::kApproach;
    case P::kApproach:
      if (to.kind == P::kFreeMotion) return true;
      if (guided) return to.kind == P::kAutoAlign && to.progress == 0.0;
      return to.kind == P::kRetract;
    case P::kAutoAlign:
      return guided && to.kind == P::kConstrainedDrill && from.progress >= 1.0;
    case P::kConstrainedDrill:
      return guided && to.kind == P::kRetract;
    case P::kRetract:
      return to.kind == P::kTargetDone;
    case P::kTargetDone:
      return false;
  }
  return false;
}

void require_legal_transition(const GuidancePhase& from, const GuidancePhase& to,
                              Condition condition) {
  if (!is_legal_transition(from, to, condition)) {
    throw StateMachineFault("illegal phase transition " + std::string(to_string(from.kind)) +
                            " -> " + std::string(to_string(to.kind)) + " (" +
                            std::string(to_string(condition)) + " guidance)");
  }
}

GuidancePhase update_phase(const GuidancePhase& phase, const PhaseInputs& in,
                           Condition condition, const GuidanceThresholds& th) {
  if (!(in.tip_to_target >= 0.0)) {
    throw std::invalid_argument("tip-to-target distance must be a non-negative number");
  }
  const bool guided = condition == Condition::kWithGuidance;
  GuidancePhase next = phase;
  switch (phase.kind) {
    case PhaseKind::kFreeMotion:
      if (in.tip_to_target <= th.adapt_radius) next = GuidancePhase::approach();
      break;
    case PhaseKind::kApproach:
      if (in.tip_to_target > th.release_radius) {
        next = GuidancePhase::free_motion();
      } else if (guided && in.tip_to_target <= th.lock_radius) {
        next = GuidancePhase::auto_align(0.0);
      } else if (!guided && in.depth_reached) {
        next = GuidancePhase::retract();
      }
      break;
    case PhaseKind::kAutoAlign:
      if (phase.progress >= 1.0) next = GuidancePhase::constrained_drill();
      break;
    case PhaseKind::kConstrainedDrill:
      if (in.depth_reached) next = GuidancePhase::retract();
      break;
    case PhaseKind::kRetract:
      if (in.retracted) next = GuidancePhase::target_done();
      break;
    case PhaseKind::kTargetDone:
      break;
  }
  require_legal_transition(phase, next, condition);
  return next;
}

GuidancePhase advance_alignment(const GuidancePhase& phase, double progress) {
  if (!phase.is(PhaseKind::kAutoAlign)) {
    throw StateMachineFault("alignment progress update outside AutoAlign");
  }
  if (!(progress >= phase.progress)) {
    throw StateMachineFault("alignment progress must not decrease");
  }
  return GuidancePhase::auto_align(std::min(progress, 1.0));
}

AlignmentPlan plan_alignment(const Pose& current, const Vec3& target_point, const Vec3& axis,
                             double standoff, double duration) {
  if (!axis.is_finite() || std::abs(axis.norm() - 1.0) > 1e-9) {
    throw GeometryFault("alignment needs a unit drilling axis");
  }
  if (!(duration > 0.0)) throw std::invalid_argument("alignment duration must be positive");
  AlignmentPlan plan;
  plan.start_pose = current;
  plan.duration = duration;
  const Vec3 tool = tool_axis(current);
  const UnitQuat delta = UnitQuat::from_two_vectors(tool, axis);
  plan.goal_pose.position = target_point - axis * standoff;
  plan.goal_pose.orientation = delta * current.orientation;
  plan.rotation_angle = delta.angle();
  if (plan.rotation_angle > 0.0) plan.rotation_axis = delta.vec().normalized();
  return plan;
}

AlignmentPlan plan_alignment(const Pose& current, const DrillTarget& target,
                             const GuidanceThresholds& th) {
  const double d = (current.position - target.point).norm();
  if (d > th.lock_radius + 1e-9) {
    throw StateMachineFault("alignment requested " + std::to_string(d) +
                            " m from the target, outside the lock radius");
  }
  return plan_alignment(current, target.point, target.axis, th.standoff, th.align_duration);
}

AlignmentSample sample_alignment(const AlignmentPlan& plan, double t) {
  AlignmentSample out;
  if (t <= 0.0) {
    out.pose = plan.start_pose;
    out.clamped = t < 0.0;
    return out;
  }
  if (t >= plan.duration) {
    out.pose = plan.goal_pose;
    out.clamped = t > plan.duration;
    return out;
  }
  const double tau = t / plan.duration;
  const double s = tau * tau * (3.0 - 2.0 * tau);
  const double ds = 6.0 * tau * (1.0 - tau) / plan.duration;
  const Vec3 travel = plan.goal_pose.position - plan.start_pose.position;
  out.pose.position = plan.start_pose.position + travel * s;
  out.pose.orientation = slerp(plan.start_pose.orientation, plan.goal_pose.orientation, s);
  out.twist.linear = travel * ds;
  out.twist.angular = plan.rotation_axis * (plan.rotation_angle * ds);
  return out;
}

Twist6 constrain_twist(const Twist6& v_ref, const Vec3& axis) {
  return {project_onto_axis(v_ref.linear, axis), Vec3{}};
}

}  // namespace gds
