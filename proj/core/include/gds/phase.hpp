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

#include <optional>
#include <string_view>

namespace gds {

enum class Condition { kWithGuidance, kWithoutGuidance };

enum class PhaseKind {
  kFreeMotion,
  kApproach,
  kAutoAlign,
  kConstrainedDrill,
  kRetract,
  kTargetDone,
};

/// Task phase for the current drill target. `progress` is only meaningful
/// for AutoAlign and runs from 0 to 1.
struct GuidancePhase {
  PhaseKind kind = PhaseKind::kFreeMotion;
  double progress = 0.0;

  static constexpr GuidancePhase free_motion() { return {PhaseKind::kFreeMotion, 0.0}; }
  static constexpr GuidancePhase approach() { return {PhaseKind::kApproach, 0.0}; }
  static constexpr GuidancePhase auto_align(double progress) {
    return {PhaseKind::kAutoAlign, progress};
  }
  static constexpr GuidancePhase constrained_drill() {
    return {PhaseKind::kConstrainedDrill, 0.0};
  }
  static constexpr GuidancePhase retract() { return {PhaseKind::kRetract, 0.0}; }
  static constexpr GuidancePhase target_done() { return {PhaseKind::kTargetDone, 0.0}; }

  constexpr bool is(PhaseKind k) const { return kind == k; }
  constexpr bool operator==(const GuidancePhase&) const = default;
};

std::string_view to_string(PhaseKind kind);
std::string_view to_string(Condition condition);
std::optional<PhaseKind> phase_from_string(std::string_view name);
std::optional<Condition> condition_from_string(std::string_view name);

}  // namespace gds
