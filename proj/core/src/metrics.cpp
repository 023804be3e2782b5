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

#include "gds/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace gds {
namespace {

constexpr double kTinyDenominator = 1e-12;

struct Powers {
  double lin_speed = 0.0;
  double ang_speed = 0.0;
  double force_power = 0.0;
  double torque_power = 0.0;
};

Powers powers(const TraceSample& s) {
  Powers p;
  p.lin_speed = s.twist.linear.norm();
  p.ang_speed = s.twist.angular.norm();
  for (std::size_t i = 0; i < 3; ++i) {
    p.force_power += std::abs(s.f_h.force[i] * s.twist.linear[i]);
    p.torque_power += std::abs(s.f_h.torque[i] * s.twist.angular[i]);
  }
  return p;
}

}  // namespace

const std::array<std::string_view, kNumMetricFields>& metric_field_names() {
  static constexpr std::array<std::string_view, kNumMetricFields> kNames{
      "t_tot", "s_lin_avg", "s_ang_avg", "E_F", "E_tau", "E_tot", "eps_phi_avg",
      "eps_theta_avg"};
  return kNames;
}

std::array<double, kNumMetricFields> metric_values(const Metrics& m) {
  return {m.t_tot, m.s_lin_avg, m.s_ang_avg, m.e_f, m.e_tau, m.e_tot, m.eps_phi_avg,
          m.eps_theta_avg};
}

TargetAlignmentError alignment_error(const DrillTarget& target, const Vec3& axis) {
  const AxisAngles cur = decompose_axis(target.frame, axis);
  TargetAlignmentError e;
  e.measured = true;
  e.eps_phi = std::abs(cur.phi_deg - target.phi_deg);
  const bool degenerate = std::abs(std::sin(deg2rad(cur.phi_deg))) < 1e-6 ||
                          std::abs(std::sin(deg2rad(target.phi_deg))) < 1e-6;
  if (!degenerate) {
    double d = std::fmod(std::abs(cur.theta_deg - target.theta_deg), 360.0);
    if (d > 180.0) d = 360.0 - d;
    e.eps_theta = d;
  }
  return e;
}

Metrics compute_metrics(const Trace& trace, std::span<const DrillTarget> targets) {
  Metrics m;
  m.partial = !trace.complete;
  if (trace.samples.empty()) {
    m.partial = true;
    return m;
  }

  const auto done = trace.events_of(EventKind::kTargetCompleted);
  std::size_t last = trace.samples.size() - 1;
  if (!done.empty() && done.size() == trace.targets_total) last = done.back().sample;
  m.t_tot = trace.samples[last].t - trace.samples.front().t;

  double lin = 0.0;
  double ang = 0.0;
  Powers prev = powers(trace.samples.front());
  for (std::size_t k = 1; k <= last; ++k) {
    const Powers cur = powers(trace.samples[k]);
    const double h = 0.5 * (trace.samples[k].t - trace.samples[k - 1].t);
    lin += h * (prev.lin_speed + cur.lin_speed);
    ang += h * (prev.ang_speed + cur.ang_speed);
    m.e_f += h * (prev.force_power + cur.force_power);
    m.e_tau += h * (prev.torque_power + cur.torque_power);
    prev = cur;
  }
  m.e_tot = m.e_f + m.e_tau;
  if (m.t_tot > 0.0) {
    m.s_lin_avg = lin / m.t_tot;
    m.s_ang_avg = ang / m.t_tot;
  }

  // Alignment error just before drilling starts.
  m.per_target.assign(targets.size(), {});
  for (const auto& e : trace.events) {
    const bool instant = trace.condition == Condition::kWithGuidance
                             ? (e.kind == EventKind::kPhaseChange &&
                                e.phase == PhaseKind::kConstrainedDrill)
                             : e.kind == EventKind::kFirstCut;
    if (!instant || e.target_index >= targets.size()) continue;
    auto& slot = m.per_target[e.target_index];
    if (slot.measured || e.sample >= trace.samples.size()) continue;
    slot = alignment_error(targets[e.target_index], tool_axis(trace.samples[e.sample].pose));
    slot.sample = e.sample;
  }
  std::size_t measured = 0;
  for (const auto& slot : m.per_target) {
    if (!slot.measured) continue;
    ++measured;
    m.eps_phi_avg += slot.eps_phi;
    m.eps_theta_avg += slot.eps_theta;
  }
  if (measured > 0) {
    m.eps_phi_avg /= static_cast<double>(measured);
    m.eps_theta_avg /= static_cast<double>(measured);
  }
  if (measured < targets.size()) m.partial = true;
  return m;
}

Trace decimate(const Trace& trace, std::size_t factor) {
  if (factor == 0) throw std::invalid_argument("decimation factor must be >= 1");
  Trace out = trace;
  out.samples.clear();
  for (std::size_t k = 0; k < trace.samples.size(); k += factor) {
    out.samples.push_back(trace.samples[k]);
  }
  out.dt = trace.dt * static_cast<double>(factor);
  for (auto& e : out.events) {
    // Round to the nearest retained sample.
    e.sample = std::min((e.sample + factor / 2) / factor, out.samples.size() - 1);
  }
  return out;
}

MetricSummary summarize(std::span<const Metrics> runs) {
  if (runs.empty()) throw std::invalid_argument("no runs to summarize");
  MetricSummary s;
  s.runs = runs.size();
  std::array<double, kNumMetricFields> sum{};
  for (const auto& r : runs) {
    if (r.partial) throw std::invalid_argument("cannot summarize partial metrics");
    const auto v = metric_values(r);
    for (std::size_t i = 0; i < kNumMetricFields; ++i) sum[i] += v[i];
  }
  const double n = static_cast<double>(runs.size());
  std::array<double, kNumMetricFields> mean{};
  for (std::size_t i = 0; i < kNumMetricFields; ++i) mean[i] = sum[i] / n;
  s.mean.t_tot = mean[0];
  s.mean.s_lin_avg = mean[1];
  s.mean.s_ang_avg = mean[2];
  s.mean.e_f = mean[3];
  s.mean.e_tau = mean[4];
  s.mean.e_tot = s.mean.e_f + s.mean.e_tau;
  s.mean.eps_phi_avg = mean[6];
  s.mean.eps_theta_avg = mean[7];
  if (runs.size() > 1) {
    std::array<double, kNumMetricFields> var{};
    for (const auto& r : runs) {
      const auto v = metric_values(r);
      for (std::size_t i = 0; i < kNumMetricFields; ++i) {
        var[i] += (v[i] - mean[i]) * (v[i] - mean[i]);
      }
    }
    std::array<double, kNumMetricFields> sd{};
    for (std::size_t i = 0; i < kNumMetricFields; ++i) sd[i] = std::sqrt(var[i] / (n - 1.0));
    s.stddev = sd;
  }
  return s;
}

ComparisonReport compare(const MetricSummary& with, const MetricSummary& without) {
  if (with.mean.partial || without.mean.partial) {
    throw std::invalid_argument("refusing to compare partial metrics");
  }
  ComparisonReport r;
  r.with_guidance = with;
  r.without_guidance = without;
  const auto a = metric_values(with.mean);
  const auto b = metric_values(without.mean);
  for (std::size_t i = 0; i < kNumMetricFields; ++i) {
    if (std::abs(b[i]) >= kTinyDenominator) r.percent_diff[i] = 100.0 * (a[i] - b[i]) / b[i];
  }
  return r;
}

ComparisonReport compare(const Metrics& with, const Metrics& without) {
  return compare(summarize(std::span(&with, 1)), summarize(std::span(&without, 1)));
}

}  // namespace gds
