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

// Fixed-step closed-loop simulation of the collaborative drilling task:
// operator -> interaction wrench -> admittance -> robot -> guidance.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gds/admittance.hpp"
#include "gds/guidance.hpp"
#include "gds/math.hpp"
#include "gds/operator_env.hpp"
#include "gds/phase.hpp"
#include "gds/workpiece.hpp"

namespace gds {

/// First-order lag between reference and actual end-effector twist.
struct PlantModel {
  double lag_time_constant = 0.05;  // s, 0 = ideal follower
};

/// Exact discrete step of the first-order lag: the actual twist relaxes
/// towards `v_ref` by 1 - exp(-dt / tau).
Twist6 plant_step(const PlantModel& plant, const Twist6& v, const Twist6& v_ref, double dt);

struct TargetSpec {
  Vec3 point;  // m, projected onto the surface (or fitted plane)
  double phi_deg = 0.0;
  double theta_deg = 0.0;
  std::vector<Vec3> patch;  // optional probed points; empty = use the surface normal
};

struct Scenario {
  Surface surface;
  std::vector<TargetSpec> targets;
  Vec3 reference_direction = Vec3::unit_x();  // fixes u_d
  Vec3 base_position;                         // robot base, orients fitted normals
  Condition condition = Condition::kWithGuidance;
  GuidanceThresholds thresholds;
  OperatorModel op;
  EnvironmentModel environment;
  PlantModel plant;
  Discretization discretization = Discretization::kExactZoh;
  double dt = 0.001;
  Pose start_pose;
  double max_sim_time = 600.0;

  /// Throws ConfigError naming the offending field.
  void validate() const;

  /// Three targets on a cylindrical workpiece with polar angles 5/30/45 deg
  /// and azimuths 0/10/10 deg.
  static Scenario experiment_one(Condition condition, std::uint64_t seed = 1);
};

/// Builds the drill targets (frames and axes) of a scenario.
std::vector<DrillTarget> build_targets(const Scenario& scenario);

struct TraceSample {
  double t = 0.0;
  Pose pose;
  Twist6 twist;
  Twist6 v_ref;
  Wrench6 f_h;
  Wrench6 f_env;
  Wrench6 f_int;
  GuidancePhase phase;
  std::array<double, kNumDofs> active_b{};  // zero for disabled DoFs and during AutoAlign
  std::size_t target_index = 0;
  double hole_depth = 0.0;
};

enum class EventKind {
  kPhaseChange,
  kFirstCut,
  kTargetCompleted,
  kCollision,
  kTimeout,
  kFault,
};

std::string_view to_string(EventKind kind);

struct TraceEvent {
  double t = 0.0;
  std::size_t sample = 0;
  EventKind kind = EventKind::kPhaseChange;
  std::size_t target_index = 0;
  PhaseKind phase = PhaseKind::kFreeMotion;  // for phase changes
  std::string detail;
};

struct Trace {
  Condition condition = Condition::kWithGuidance;
  std::vector<TraceSample> samples;
  std::vector<TraceEvent> events;
  std::uint64_t config_digest = 0;
  std::size_t targets_total = 0;
  std::size_t targets_completed = 0;
  bool complete = false;
  std::string fault;  // empty unless the run aborted
  double dt = 0.0;

  /// FNV-1a over the bit patterns of every sample field.
  std::uint64_t sample_checksum() const;
  std::vector<TraceEvent> events_of(EventKind kind) const;
};

/// Stable digest of every scenario field, including mesh data.
std::uint64_t scenario_digest(const Scenario& scenario);

/// Optional extra wrench added to the environment side of the balance,
/// e.g. a lateral push used to test the drilling constraint.
using Disturbance = std::function<Wrench6(double t, const GuidancePhase& phase)>;

class Simulator {
 public:
  explicit Simulator(const Scenario& scenario);

  /// Advances the loop by one dt and returns the recorded sample. Throws
  /// Fault when the state becomes non-finite (the message names the sample
  /// index); callers normally go through run().
  const TraceSample& step();

  bool finished() const;
  void set_disturbance(Disturbance d) { disturbance_ = std::move(d); }

  const Trace& trace() const { return trace_; }
  Trace take_trace() { return std::move(trace_); }
  const std::vector<DrillTarget>& targets() const { return targets_; }
  const GuidancePhase& phase() const { return phase_; }
  const Pose& pose() const { return pose_; }
  const Twist6& twist() const { return twist_; }
  const HoleState& hole() const { return hole_; }
  std::size_t target_index() const { return target_index_; }
  std::uint64_t step_count() const { return step_; }
  double time() const { return static_cast<double>(step_) * scenario_.dt; }
  const OperatorAgent& operator_agent() const { return agent_; }

  /// Testing hooks: place the robot in a given phase and pose.
  void force_state(const Pose& pose, const GuidancePhase& phase, const Twist6& twist = {});

 private:
  void enter_phase(const GuidancePhase& next, double t);
  void record_event(EventKind kind, const std::string& detail = {});
  bool constrained() const;

  Scenario scenario_;
  std::vector<DrillTarget> targets_;
  OperatorAgent agent_;
  AdmittanceState admittance_;
  GainSchedule schedule_;
  std::optional<AlignmentPlan> plan_;
  std::uint64_t align_steps_ = 0;
  Disturbance disturbance_;

  std::uint64_t step_ = 0;
  Pose pose_;
  Twist6 twist_;
  GuidancePhase phase_;
  HoleState hole_;
  std::size_t target_index_ = 0;
  bool in_collision_ = false;
  Trace trace_;
};

/// Runs a scenario until every target is done or max_sim_time elapses.
/// Faults do not propagate: they end the run and are recorded in the trace.
Trace run(const Scenario& scenario, const Disturbance& disturbance = {});

}  // namespace gds
