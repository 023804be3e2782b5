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

#include "gds/phase.hpp"

#include <array>
#include <utility>

namespace gds {
namespace {

constexpr std::array<std::pair<PhaseKind, std::string_view>, 6> kPhaseNames{{
    {PhaseKind::kFreeMotion, "FreeMotion"},
    {PhaseKind::kApproach, "Approach"},
    {PhaseKind::kAutoAlign, "AutoAlign"},
    {PhaseKind::kConstrainedDrill, "ConstrainedDrill"},
    {PhaseKind::kRetract, "Retract"},
    {PhaseKind::kTargetDone, "TargetDone"},
}};

}  // namespace

std::string_view to_string(PhaseKind kind) {
  for (const auto& [k, name] : kPhaseNames) {
    if (k == kind) return name;
  }
  return "Unknown";
}

std::string_view to_string(Condition condition) {
  return condition == Condition::kWithGuidance ? "with" : "without";
}

std::optional<PhaseKind> phase_from_string(std::string_view name) {
  for (const auto& [k, n] : kPhaseNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::optional<Condition> condition_from_string(std::string_view name) {
  if (name == "with" || name == "WithGuidance") return Condition::kWithGuidance;
  if (name == "without" || name == "WithoutGuidance") return Condition::kWithoutGuidance;
  return std::nullopt;
}

}  // namespace gds
