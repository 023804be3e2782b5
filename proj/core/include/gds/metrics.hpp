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

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gds/sim.hpp"
#include "gds/workpiece.hpp"

namespace gds {

struct TargetAlignmentError {
  double eps_phi = 0.0;    // deg
  double eps_theta = 0.0;  // deg
  std::size_t sample = 0;  // sample at which the error was measured
  bool measured = false;
};

struct Metrics {
  double t_tot = 0.0;      // s
  double s_lin_avg = 0.0;  // m/s
  double s_ang_avg = 0.0;  // rad/s
  double e_f = 0.0;        // J
  double e_tau = 0.0;      // J
  double e_tot = 0.0;      // J, always e_f + e_tau
  double eps_phi_avg = 0.0;    // deg
  double eps_theta_avg = 0.0;  // deg
  std::vector<TargetAlignmentError> per_target;
  bool partial = false;
};

inline constexpr std::size_t kNumMetricFields = 8;

/// Names of the scalar metric fields, in report order.
const std::array<std::string_view, kNumMetricFields>& metric_field_names();
std::array<double, kNumMetricFields> metric_values(const Metrics& m);

/// Alignment error of `axis` against the desired (phi, theta) of `target`:
/// polar error |phi_cur - phi_des| and azimuth error wrapped to [0, 180];
/// the azimuth error is 0 when either polar angle has sin < 1e-6.
TargetAlignmentError alignment_error(const DrillTarget& target, const Vec3& axis);

/// Scalar metrics over the session [0, t_tot], t_tot being the completion
/// time of the last target. Integrals use the trapezoidal rule over the
/// samples. Alignment errors are taken at the ConstrainedDrill entry (with
/// guidance) or at the first cut (without). An incomplete trace yields
/// metrics over what was recorded, flagged partial.
Metrics compute_metrics(const Trace& trace, std::span<const DrillTarget> targets);

/// Every `factor`-th sample of a trace (events re-indexed), for
/// integration-convergence checks.
Trace decimate(const Trace& trace, std::size_t factor);

struct MetricSummary {
  Metrics mean;
  std::optional<std::array<double, kNumMetricFields>> stddev;  // absent for n == 1
  std::size_t runs = 0;
};

/// Field-wise mean (and sample standard deviation when n > 1). Throws
/// std::invalid_argument on an empty or partial input.
MetricSummary summarize(std::span<const Metrics> runs);

struct ComparisonReport {
  MetricSummary with_guidance;
  MetricSummary without_guidance;
  /// 100 (with - without) / without; empty when |without| < 1e-12.
  std::array<std::optional<double>, kNumMetricFields> percent_diff{};
};

/// Percent relative differences (negative: guidance reduced the metric).
/// Throws std::invalid_argument when either side is partial.
ComparisonReport compare(const Metrics& with, const Metrics& without);
ComparisonReport compare(const MetricSummary& with, const MetricSummary& without);

}  // namespace gds
