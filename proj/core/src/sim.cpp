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

#include "gds/sim.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gds/digest.hpp"
#include "gds/fault.hpp"

namespace gds {
namespace {

std::string index_field(const char* base, std::size_t i, const char* leaf) {
  return std::string(base) + "[" + std::to_string(i) + "]." + leaf;
}

bool sample_is_finite(const TraceSample& s) {
  const auto q = s.pose.orientation;
  return s.pose.position.is_finite() && std::isfinite(q.w()) && std::isfinite(q.x()) &&
         std::isfinite(q.y()) && std::isfinite(q.z()) && s.twist.is_finite() &&
         s.v_ref.is_finite() && s.f_h.is_finite() && s.f_env.is_finite() &&
         s.f_int.is_finite() && std::isfinite(s.hole_depth);
}

}  // namespace

Twist6 plant_step(const PlantModel& plant, const Twist6& v, const Twist6& v_ref, double dt) {
  if (plant.lag_time_constant <= 0.0) return v_ref;
  const double alpha = -std::expm1(-dt / plant.lag_time_constant);
  return {v.linear + (v_ref.linear - v.linear) * alpha,
          v.angular + (v_ref.angular - v.angular) * alpha};
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kPhaseChange: return "phase_change";
    case EventKind::kFirstCut: return "first_cut";
    case EventKind::kTargetCompleted: return "target_completed";
    case EventKind::kCollision: return "collision";
    case EventKind::kTimeout: return "timeout";
    case EventKind::kFault: return "fault";
  }
  return "unknown";
}

void Scenario::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt", "must be a positive number");
  if (!(max_sim_time > 0.0)) throw ConfigError("max_sim_time", "must be positive");
  if (targets.empty()) throw ConfigError("targets", "at least one target is required");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto& t = targets[i];
    if (!(t.phi_deg >= 0.0 && t.phi_deg <= 90.0)) {
      throw ConfigError(index_field("targets", i, "phi_deg"), "must be within [0, 90]");
    }
    if (!(t.theta_deg >= 0.0 && t.theta_deg < 360.0)) {
      throw ConfigError(index_field("targets", i, "theta_deg"), "must be within [0, 360)");
    }
    if (!t.patch.empty() && t.patch.size() < 3) {
      throw ConfigError(index_field("targets", i, "patch"), "needs at least 3 points");
    }
  }
  if (plant.lag_time_constant < 0.0) {
    throw ConfigError("plant.lag_time_constant", "must be >= 0");
  }
  try {
    thresholds.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("thresholds", e.what());
  }
  try {
    op.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("operator", e.what());
  }
  try {
    environment.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("environment", e.what());
  }
  try {
    validate_surface(surface);
  } catch (const GeometryFault& e) {
    throw ConfigError("surface", e.what());
  }
}

Scenario Scenario::experiment_one(Condition condition, std::uint64_t seed) {
  Scenario s;
  CylinderPatch cyl;
  cyl.center = {0.6, 0.0, -0.4};
  cyl.axis = Vec3::unit_y();
  cyl.radius = 0.2;
  cyl.half_length = 0.3;
  s.surface = cyl;

  struct Site {
    double around_deg;
    double along;
    double phi;
    double theta;
  };
  constexpr Site kSites[] = {{-15.0, -0.12, 5.0, 0.0}, {0.0, 0.0, 30.0, 10.0},
                             {15.0, 0.12, 45.0, 10.0}};
  for (const auto& site : kSites) {
    const double a = deg2rad(site.around_deg);
    TargetSpec t;
    t.point = cyl.center + Vec3{std::sin(a), 0.0, std::cos(a)} * cyl.radius +
              Vec3::unit_y() * site.along;
    t.phi_deg = site.phi;
    t.theta_deg = site.theta;
    s.targets.push_back(t);
  }
  s.condition = condition;
  s.op.seed = seed;
  s.start_pose.position = {0.35, -0.3, 0.05};
  // Drill pointing straight down.
  s.start_pose.orientation = UnitQuat::from_axis_angle(Vec3::unit_x(), kPi);
  return s;
}

std::vector<DrillTarget> build_targets(const Scenario& scenario) {
  std::vector<DrillTarget> out;
  out.reserve(scenario.targets.size());
  for (std::size_t i = 0; i < scenario.targets.size(); ++i) {
    const auto& spec = scenario.targets[i];
    try {
      if (spec.patch.empty()) {
        out.push_back(make_target(scenario.surface, spec.point, spec.phi_deg, spec.theta_deg,
                                  scenario.reference_direction));
      } else {
        out.push_back(make_target_from_patch(spec.patch, spec.point, spec.phi_deg,
                                             spec.theta_deg, scenario.reference_direction,
                                             scenario.base_position));
      }
    } catch (const GeometryFault& e) {
      throw ConfigError(index_field("targets", i, "point"), e.what());
    }
  }
  return out;
}

std::uint64_t Trace::sample_checksum() const {
  Fnv1a h;
  for (const auto& s : samples) {
    h.add(s.t);
    h.add(s.pose.position);
    h.add(s.pose.orientation);
    for (const Twist6* tw : {&s.twist, &s.v_ref}) {
      h.add(tw->linear);
      h.add(tw->angular);
    }
    for (const Wrench6* w : {&s.f_h, &s.f_env, &s.f_int}) {
      h.add(w->force);
      h.add(w->torque);
    }
    h.add(static_cast<std::uint64_t>(s.phase.kind));
    h.add(s.phase.progress);
    for (double b : s.active_b) h.add(b);
    h.add(static_cast<std::uint64_t>(s.target_index));
    h.add(s.hole_depth);
  }
  return h.value();
}

std::vector<TraceEvent> Trace::events_of(EventKind kind) const {
  std::vector<TraceEvent> out;
  for (const auto& e : events) {
    if (e.kind == kind) out.push_back(e);
  }
  return out;
}

std::uint64_t scenario_digest(const Scenario& s) {
  Fnv1a h;
  h.add(std::string_view("gds.scenario/1"));
  std::visit(
      [&h](const auto& surf) {
        using T = std::decay_t<decltype(surf)>;
        if constexpr (std::is_same_v<T, CylinderPatch>) {
          h.add(std::string_view("cylinder"));
          h.add(surf.center);
          h.add(surf.axis);
          h.add(surf.radius);
          h.add(surf.half_length);
        } else if constexpr (std::is_same_v<T, SpherePatch>) {
          h.add(std::string_view("sphere"));
          h.add(surf.center);
          h.add(surf.radius);
        } else {
          h.add(std::string_view("mesh"));
          for (const auto& v : surf.vertices) h.add(v);
          for (const auto& t : surf.triangles) {
            for (auto i : t) h.add(static_cast<std::uint64_t>(i));
          }
        }
      },
      s.surface);
  for (const auto& t : s.targets) {
    h.add(t.point);
    h.add(t.phi_deg);
    h.add(t.theta_deg);
    for (const auto& p : t.patch) h.add(p);
  }
  h.add(s.reference_direction);
  h.add(s.base_position);
  h.add(static_cast<std::uint64_t>(s.condition));
  const auto& th = s.thresholds;
  for (double v : {th.adapt_radius, th.release_radius, th.lock_radius, th.align_duration,
                   th.standoff}) {
    h.add(v);
  }
  const auto& op = s.op;
  h.add(static_cast<std::uint64_t>(op.variant));
  for (double v : {op.k_p, op.k_d, op.torque_k_p, op.torque_k_d, op.reaction_delay,
                   op.angular_noise, op.force_cap, op.torque_cap, op.push_force,
                   op.retract_force, op.guided_offset, op.manual_offset, op.settle_position,
                   op.settle_angle, op.settle_speed}) {
    h.add(v);
  }
  h.add(op.seed);
  const auto& env = s.environment;
  for (double v : {env.contact_stiffness, env.contact_damping, env.cut_resistance,
                   env.stall_damping, env.thrust_threshold, env.hole_depth_goal,
                   env.capture_radius, env.collision_depth}) {
    h.add(v);
  }
  h.add(s.plant.lag_time_constant);
  h.add(static_cast<std::uint64_t>(s.discretization));
  h.add(s.dt);
  h.add(s.start_pose.position);
  h.add(s.start_pose.orientation);
  h.add(s.max_sim_time);
  return h.value();
}

// ----------------------------------------------------------------------------
// Simulator

Simulator::Simulator(const Scenario& scenario)
    : scenario_((scenario.validate(), scenario)),
      targets_(build_targets(scenario_)),
      agent_(scenario_.op, scenario_.condition, targets_),
      admittance_(phase_params(PhaseKind::kFreeMotion, scenario_.condition),
                  scenario_.discretization),
      pose_(scenario_.start_pose),
      phase_(GuidancePhase::free_motion()) {
  schedule_.start_params = admittance_.params();
  schedule_.end_params = admittance_.params();
  schedule_.ramp_start = 0.0;

  trace_.condition = scenario_.condition;
  trace_.config_digest = scenario_digest(scenario_);
  trace_.targets_total = targets_.size();
  trace_.dt = scenario_.dt;

  TraceSample s0;
  s0.pose = pose_;
  s0.phase = phase_;
  s0.active_b = admittance_.params().damping();
  trace_.samples.push_back(s0);
  record_event(EventKind::kPhaseChange);
}

bool Simulator::finished() const {
  return !trace_.fault.empty() || trace_.targets_completed == targets_.size() ||
         time() >= scenario_.max_sim_time;
}

bool Simulator::constrained() const {
  return scenario_.condition == Condition::kWithGuidance &&
         (phase_.is(PhaseKind::kConstrainedDrill) || phase_.is(PhaseKind::kRetract));
}

void Simulator::record_event(EventKind kind, const std::string& detail) {
  TraceEvent e;
  e.t = time();
  e.sample = static_cast<std::size_t>(step_);
  e.kind = kind;
  e.target_index = target_index_;
  e.phase = phase_.kind;
  e.detail = detail;
  trace_.events.push_back(std::move(e));
}

void Simulator::force_state(const Pose& pose, const GuidancePhase& phase, const Twist6& twist) {
  pose_ = pose;
  twist_ = twist;
  if (phase.kind != phase_.kind) {
    phase_ = phase;
    if (phase.is(PhaseKind::kAutoAlign)) {
      plan_ = plan_alignment(pose_, targets_[target_index_].point,
                             targets_[target_index_].axis, scenario_.thresholds.standoff,
                             scenario_.thresholds.align_duration);
      align_steps_ = 0;
      admittance_.reset();
    }
    const auto params = phase_params(phase.kind, scenario_.condition);
    schedule_ = {params, params, time(), 1.0};
    admittance_.set_params(params);
    record_event(EventKind::kPhaseChange, "forced");
  }
  admittance_.set_velocity(twist);
}

void Simulator::enter_phase(const GuidancePhase& next, double t) {
  const DrillTarget& target = targets_[target_index_];
  const AdmittanceParams current = schedule_.at(t);
  phase_ = next;
  schedule_ = {current, phase_params(next.kind, scenario_.condition), t, 1.0};
  switch (next.kind) {
    case PhaseKind::kAutoAlign:
      plan_ = plan_alignment(pose_, target, scenario_.thresholds);
      align_steps_ = 0;
      admittance_.reset();
      break;
    case PhaseKind::kConstrainedDrill:
      plan_.reset();
      break;
    default:
      break;
  }
  record_event(EventKind::kPhaseChange);
  if (next.is(PhaseKind::kTargetDone)) {
    ++trace_.targets_completed;
    record_event(EventKind::kTargetCompleted);
  }
}

const TraceSample& Simulator::step() {
  const double dt = scenario_.dt;
  const double t0 = time();

  if (phase_.is(PhaseKind::kTargetDone) && target_index_ + 1 < targets_.size()) {
    ++target_index_;
    hole_ = {};
    in_collision_ = false;
    enter_phase(GuidancePhase::free_motion(), t0);
  }
  const DrillTarget& target = targets_[target_index_];

  // 1-3: operator, environment and their sum at the force sensor.
  const Wrench6 f_h = agent_.wrench({t0, pose_, twist_, phase_, target_index_, hole_});
  const Vec3 site_axis = hole_.started ? hole_.axis : tool_axis(pose_);
  const EnvironmentResult env =
      environment_wrench(scenario_.environment, pose_, twist_, scenario_.surface, target, hole_,
                         f_h.force.dot(site_axis));
  Wrench6 f_env = env.wrench;
  if (disturbance_) f_env = f_env + disturbance_(t0, phase_);
  const Wrench6 f_int = f_h + f_env;

  TraceSample s;
  if (phase_.is(PhaseKind::kAutoAlign)) {
    // 4a: admittance bypassed, the robot follows the alignment plan.
    ++align_steps_;
    const auto total = static_cast<std::uint64_t>(
        std::ceil(plan_->duration / dt - 1e-9));
    const bool last = align_steps_ >= total;
    const double ta = last ? plan_->duration : static_cast<double>(align_steps_) * dt;
    const AlignmentSample a = sample_alignment(*plan_, ta);
    pose_ = a.pose;
    twist_ = a.twist;
    s.v_ref = a.twist;
    phase_ = advance_alignment(
        phase_, last ? 1.0 : static_cast<double>(align_steps_) / static_cast<double>(total));
  } else {
    // 4b: admittance with the scheduled gains, then the drilling constraint.
    admittance_.set_params(schedule_.at(t0));
    Twist6 v_ref = admittance_.step(f_int, dt);
    if (constrained()) {
      v_ref = constrain_twist(v_ref, target.axis);
      admittance_.set_velocity(v_ref);
    }
    // 5: robot and its internal controller.
    twist_ = plant_step(scenario_.plant, twist_, v_ref, dt);
    if (constrained()) twist_ = constrain_twist(twist_, target.axis);
    // 6: pose integration.
    pose_.position += twist_.linear * dt;
    if (twist_.angular != Vec3{}) {
      pose_.orientation =
          UnitQuat::from_rotation_vector(twist_.angular * dt) * pose_.orientation;
    }
    s.v_ref = v_ref;
    s.active_b = admittance_.params().damping();
  }

  ++step_;

  // 7: hole, contact bookkeeping and phase logic.
  const Vec3 bit_axis = constrained() ? target.axis : tool_axis(pose_);
  const DrillSite site =
      locate_drill_site(scenario_.environment, pose_.position, target, hole_, bit_axis);
  const double feed = twist_.linear.dot(site.axis);
  if (site.at_face && feed > 0.0) {
    hole_ = update_hole(scenario_.environment, hole_, feed, f_h.force.dot(site.axis), dt);
    if (!hole_.started && hole_.depth > 0.0) {
      hole_.started = true;
      hole_.axis = site.axis;
      record_event(EventKind::kFirstCut);
    }
  }
  hole_.engaged = hole_.depth > 0.0 && site.in_region;

  if (env.collision && !in_collision_) {
    record_event(EventKind::kCollision,
                 "off-target penetration " + std::to_string(env.off_target_penetration) + " m");
  }
  in_collision_ = env.collision;

  const double distance = (pose_.position - target.point).norm();
  PhaseInputs in;
  in.tip_to_target = distance;
  in.depth_reached = hole_.depth >= scenario_.environment.hole_depth_goal;
  in.retracted = hole_.started && distance >= scenario_.thresholds.standoff;
  const GuidancePhase next = update_phase(phase_, in, scenario_.condition, scenario_.thresholds);
  if (next.kind != phase_.kind) enter_phase(next, time());

  s.t = time();
  s.pose = pose_;
  s.twist = twist_;
  s.f_h = f_h;
  s.f_env = f_env;
  s.f_int = f_int;
  s.phase = phase_;
  s.target_index = target_index_;
  s.hole_depth = hole_.depth;
  if (!sample_is_finite(s)) {
    throw Fault("non-finite simulation state at sample " + std::to_string(step_));
  }
  trace_.samples.push_back(s);
  return trace_.samples.back();
}

Trace run(const Scenario& scenario, const Disturbance& disturbance) {
  Simulator sim(scenario);
  if (disturbance) sim.set_disturbance(disturbance);
  std::string fault;
  while (!sim.finished()) {
    try {
      sim.step();
    } catch (const std::exception& e) {
      fault = e.what();
      break;
    }
  }
  Trace trace = sim.take_trace();
  if (!fault.empty()) {
    trace.fault = fault;
    TraceEvent e;
    e.t = sim.time();
    e.sample = static_cast<std::size_t>(sim.step_count());
    e.kind = EventKind::kFault;
    e.target_index = sim.target_index();
    e.phase = sim.phase().kind;
    e.detail = fault;
    trace.events.push_back(std::move(e));
  } else if (trace.targets_completed < trace.targets_total) {
    TraceEvent e;
    e.t = sim.time();
    e.sample = static_cast<std::size_t>(sim.step_count());
    e.kind = EventKind::kTimeout;
    e.target_index = sim.target_index();
    e.phase = sim.phase().kind;
    e.detail = "max_sim_time reached";
    trace.events.push_back(std::move(e));
  }
  trace.complete = fault.empty() && trace.targets_completed == trace.targets_total;
  return trace;
}

}  // namespace gds
