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

#include "gds/operator_env.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace gds {
namespace {

Vec3 clamp_norm(const Vec3& v, double cap) {
  const double n = v.norm();
  return n > cap ? v * (cap / n) : v;
}

// Rotation vector turning direction `from` onto direction `to`.
Vec3 rotation_error(const Vec3& from, const Vec3& to) {
  const Vec3 c = from.cross(to);
  const double s = c.norm();
  if (s == 0.0) return {};
  return c * (angle_between(from, to) / s);
}

double wrap_degrees(double deg) {
  double w = std::fmod(deg, 360.0);
  if (w < 0.0) w += 360.0;
  if (w >= 360.0) w -= 360.0;
  return w;
}

}  // namespace

void OperatorModel::validate() const {
  if (k_p < 0 || k_d < 0 || torque_k_p < 0 || torque_k_d < 0 || reaction_delay < 0 ||
      angular_noise < 0 || push_force < 0 || retract_force < 0 || guided_offset < 0 ||
      manual_offset < 0 || settle_position <= 0 || settle_angle <= 0 || settle_speed <= 0) {
    throw std::invalid_argument("operator gains, delays and offsets must be non-negative");
  }
  if (!(force_cap > 0.0) || !(torque_cap > 0.0)) {
    throw std::invalid_argument("operator force and torque caps must be positive");
  }
}

void EnvironmentModel::validate() const {
  if (contact_stiffness < 0 || contact_damping < 0 || cut_resistance < 0 || stall_damping < 0 ||
      thrust_threshold < 0 || hole_depth_goal < 0 || capture_radius < 0 || collision_depth < 0) {
    throw std::invalid_argument("environment parameters must be non-negative");
  }
}

OperatorVariant resolve_variant(OperatorVariant v, Condition condition) {
  if (v != OperatorVariant::kAuto) return v;
  return condition == Condition::kWithGuidance ? OperatorVariant::kGuided
                                               : OperatorVariant::kManualAlign;
}

std::vector<OperatorBelief> draw_beliefs(const OperatorModel& model,
                                         std::span<const DrillTarget> targets) {
  std::mt19937_64 rng(model.seed);
  std::normal_distribution<double> noise(0.0, model.angular_noise > 0.0 ? model.angular_noise
                                                                        : 1.0);
  const double scale = model.angular_noise > 0.0 ? 1.0 : 0.0;
  std::vector<OperatorBelief> out;
  out.reserve(targets.size());
  for (const auto& target : targets) {
    const double d_phi = scale * noise(rng);
    const double d_theta = scale * noise(rng);
    OperatorBelief b;
    // The polar angle is a magnitude: a bias past the normal reflects.
    b.phi_deg = std::min(std::abs(target.phi_deg + d_phi), 90.0);
    b.theta_deg = wrap_degrees(target.theta_deg + d_theta);
    b.axis = drilling_axis(target.frame, b.phi_deg, b.theta_deg);
    out.push_back(b);
  }
  return out;
}

Wrench6 guided_pull(const OperatorModel& model, const Pose& pose, const Twist6& twist,
                    const Vec3& waypoint) {
  const Vec3 f = (waypoint - pose.position) * model.k_p - twist.linear * model.k_d;
  return {clamp_norm(f, model.force_cap), {}};
}

OperatorAgent::OperatorAgent(const OperatorModel& model, Condition condition,
                             std::vector<DrillTarget> targets)
    : model_(model),
      variant_(resolve_variant(model.variant, condition)),
      targets_(std::move(targets)) {
  model_.validate();
  if (variant_ == OperatorVariant::kManualAlign) beliefs_ = draw_beliefs(model_, targets_);
}

Wrench6 OperatorAgent::clamp(Wrench6 w) const {
  return {clamp_norm(w.force, model_.force_cap), clamp_norm(w.torque, model_.torque_cap)};
}

Wrench6 OperatorAgent::wrench(const OperatorInput& in) {
  if (in.target_index >= targets_.size()) return {};
  if (in.target_index != last_target_) {
    last_target_ = in.target_index;
    stage_ = Stage::kAlign;
    grab_time_ = in.t;
  }
  if (in.phase.kind != last_phase_) {
    if (in.phase.is(PhaseKind::kConstrainedDrill) || in.phase.is(PhaseKind::kRetract)) {
      grab_time_ = in.t;
    }
    last_phase_ = in.phase.kind;
  }
  if (in.phase.is(PhaseKind::kAutoAlign) || in.phase.is(PhaseKind::kTargetDone)) return {};
  if (in.t - grab_time_ < model_.reaction_delay) return {};

  const DrillTarget& target = targets_[in.target_index];
  const Wrench6 w =
      variant_ == OperatorVariant::kManualAlign ? manual(in, target) : guided(in, target);
  return clamp(w);
}

Wrench6 OperatorAgent::guided(const OperatorInput& in, const DrillTarget& target) const {
  switch (in.phase.kind) {
    case PhaseKind::kFreeMotion:
    case PhaseKind::kApproach:
      return guided_pull(model_, in.pose, in.twist,
                         target.point - target.axis * model_.guided_offset);
    case PhaseKind::kConstrainedDrill:
      return {target.axis * model_.push_force, {}};
    case PhaseKind::kRetract:
      return {target.axis * -model_.retract_force, {}};
    default:
      return {};
  }
}

Wrench6 OperatorAgent::manual(const OperatorInput& in, const DrillTarget& target) {
  const OperatorBelief& belief = beliefs_[in.target_index];
  const Vec3 tool = tool_axis(in.pose);
  const Vec3& p = in.pose.position;
  const Vec3& v = in.twist.linear;

  const bool retracting = in.phase.is(PhaseKind::kRetract);
  const Vec3 line_dir = retracting && in.hole.started ? in.hole.axis : belief.axis;
  const Vec3 torque = rotation_error(tool, line_dir) * model_.torque_k_p -
                      in.twist.angular * model_.torque_k_d;

  // Lateral PD keeping the tip on the line through the target.
  const auto hold_line = [&]() {
    const Vec3 on_line = target.point + line_dir * (p - target.point).dot(line_dir);
    const Vec3 v_lat = v - line_dir * v.dot(line_dir);
    return (on_line - p) * model_.k_p - v_lat * model_.k_d;
  };

  if (retracting) return {line_dir * -model_.retract_force + hold_line(), torque};

  if (stage_ == Stage::kAlign && !in.hole.started) {
    const Vec3 waypoint = target.point - belief.axis * model_.manual_offset;
    const bool settled = in.phase.is(PhaseKind::kApproach) &&
                         (waypoint - p).norm() < model_.settle_position &&
                         angle_between(tool, belief.axis) < deg2rad(model_.settle_angle) &&
                         v.norm() < model_.settle_speed;
    if (!settled) return {(waypoint - p) * model_.k_p - v * model_.k_d, torque};
    stage_ = Stage::kPush;
  }
  return {tool * model_.push_force + hold_line(), torque};
}

DrillSite locate_drill_site(const EnvironmentModel& env, const Vec3& tip,
                            const DrillTarget& target, const HoleState& hole,
                            const Vec3& bit_axis) {
  DrillSite site;
  site.axis = hole.started ? hole.axis : bit_axis;
  const Vec3 rel = tip - target.point;
  site.axial = rel.dot(site.axis);
  site.lateral = (rel - site.axis * site.axial).norm();
  const bool captured = site.lateral <= env.capture_radius;
  site.in_region = captured && site.axial >= -env.capture_radius;
  site.at_face = captured && site.axial >= hole.depth;
  return site;
}

EnvironmentResult environment_wrench(const EnvironmentModel& env, const Pose& tip,
                                     const Twist6& twist, const Surface& surface,
                                     const DrillTarget& target, const HoleState& hole,
                                     double operator_thrust) {
  EnvironmentResult out;
  const DrillSite site = locate_drill_site(env, tip.position, target, hole, tool_axis(tip));
  if (site.in_region) {
    const double feed = twist.linear.dot(site.axis);
    if (site.at_face && feed > 0.0) {
      const double c =
          operator_thrust >= env.thrust_threshold ? env.cut_resistance : env.stall_damping;
      out.wrench.force = site.axis * (-c * feed);
    }
    return out;
  }
  const SurfaceQuery q = query_surface(surface, tip.position);
  if (q.signed_distance >= 0.0) return out;
  const double penetration = -q.signed_distance;
  const double normal_speed = twist.linear.dot(q.outward_normal);
  const double f = std::max(
      0.0, env.contact_stiffness * penetration - env.contact_damping * normal_speed);
  out.wrench.force = q.outward_normal * f;
  out.off_target_penetration = penetration;
  out.collision = penetration > env.collision_depth;
  return out;
}

HoleState update_hole(const EnvironmentModel& env, const HoleState& hole, double axial_feed,
                      double axial_force, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("hole update requires dt > 0");
  HoleState next = hole;
  if (axial_feed > 0.0 && axial_force >= env.thrust_threshold) next.depth += axial_feed * dt;
  next.engaged = next.depth > 0.0;
  return next;
}

}  // namespace gds
