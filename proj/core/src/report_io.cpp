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

#include "gds/report_io.hpp"

#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace gds {
namespace {

using ordered_json = nlohmann::ordered_json;

void put(std::string& row, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  if (!row.empty()) row.push_back(',');
  row += buf;
}

void put(std::string& row, std::string_view s) {
  if (!row.empty()) row.push_back(',');
  row += s;
}

void add_group(std::vector<std::string>& cols, const char* prefix,
               std::initializer_list<const char*> leaves) {
  for (const char* leaf : leaves) cols.push_back(std::string(prefix) + "_" + leaf);
}

ordered_json summary_json(const MetricSummary& s) {
  ordered_json out;
  out["runs"] = s.runs;
  const auto values = metric_values(s.mean);
  ordered_json mean;
  for (std::size_t i = 0; i < kNumMetricFields; ++i) {
    mean[std::string(metric_field_names()[i])] = values[i];
  }
  out["mean"] = std::move(mean);
  if (s.stddev) {
    ordered_json sd;
    for (std::size_t i = 0; i < kNumMetricFields; ++i) {
      sd[std::string(metric_field_names()[i])] = (*s.stddev)[i];
    }
    out["stddev"] = std::move(sd);
  }
  return out;
}

}  // namespace

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<std::string> trace_csv_columns() {
  std::vector<std::string> cols{"t"};
  add_group(cols, "pos", {"x", "y", "z"});
  add_group(cols, "quat", {"w", "x", "y", "z"});
  add_group(cols, "v", {"x", "y", "z"});
  add_group(cols, "w", {"x", "y", "z"});
  add_group(cols, "vref", {"x", "y", "z", "wx", "wy", "wz"});
  for (const char* w : {"fh", "fenv", "fint"}) {
    add_group(cols, w, {"fx", "fy", "fz", "tx", "ty", "tz"});
  }
  cols.emplace_back("phase");
  cols.emplace_back("phase_progress");
  add_group(cols, "b", {"0", "1", "2", "3", "4", "5"});
  cols.emplace_back("target_index");
  cols.emplace_back("hole_depth");
  return cols;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  std::string row;
  for (const auto& c : trace_csv_columns()) put(row, c);
  out << row << '\n';
  for (const auto& s : trace.samples) {
    row.clear();
    put(row, s.t);
    for (std::size_t i = 0; i < 3; ++i) put(row, s.pose.position[i]);
    const UnitQuat& q = s.pose.orientation;
    for (double c : {q.w(), q.x(), q.y(), q.z()}) put(row, c);
    for (std::size_t i = 0; i < 6; ++i) put(row, s.twist[i]);
    for (std::size_t i = 0; i < 6; ++i) put(row, s.v_ref[i]);
    for (const Wrench6* w : {&s.f_h, &s.f_env, &s.f_int}) {
      for (std::size_t i = 0; i < 6; ++i) put(row, (*w)[i]);
    }
    put(row, to_string(s.phase.kind));
    put(row, s.phase.progress);
    for (double b : s.active_b) put(row, b);
    put(row, std::to_string(s.target_index));
    put(row, s.hole_depth);
    out << row << '\n';
  }
}

std::string events_json(const Trace& trace) {
  ordered_json doc;
  doc["schema"] = "gds.events/1";
  doc["condition"] = to_string(trace.condition);
  doc["config_digest"] = hex64(trace.config_digest);
  doc["sample_checksum"] = hex64(trace.sample_checksum());
  doc["dt"] = trace.dt;
  doc["samples"] = trace.samples.size();
  doc["targets_total"] = trace.targets_total;
  doc["targets_completed"] = trace.targets_completed;
  doc["complete"] = trace.complete;
  doc["fault"] = trace.fault.empty() ? ordered_json() : ordered_json(trace.fault);
  ordered_json events = ordered_json::array();
  for (const auto& e : trace.events) {
    ordered_json je;
    je["t"] = e.t;
    je["sample"] = e.sample;
    je["kind"] = to_string(e.kind);
    je["target"] = e.target_index;
    if (e.kind == EventKind::kPhaseChange) je["phase"] = to_string(e.phase);
    if (!e.detail.empty()) je["detail"] = e.detail;
    events.push_back(std::move(je));
  }
  doc["events"] = std::move(events);
  return doc.dump(2) + "\n";
}

std::string metrics_json(const Metrics& m) {
  ordered_json doc;
  doc["schema"] = "gds.metrics/1";
  const auto values = metric_values(m);
  for (std::size_t i = 0; i < kNumMetricFields; ++i) {
    doc[std::string(metric_field_names()[i])] = values[i];
  }
  ordered_json per = ordered_json::array();
  for (const auto& t : m.per_target) {
    ordered_json jt;
    jt["measured"] = t.measured;
    jt["eps_phi"] = t.eps_phi;
    jt["eps_theta"] = t.eps_theta;
    jt["sample"] = t.sample;
    per.push_back(std::move(jt));
  }
  doc["per_target"] = std::move(per);
  doc["partial"] = m.partial;
  return doc.dump(2) + "\n";
}

std::string comparison_json(const ComparisonReport& r) {
  ordered_json doc;
  doc["schema"] = "gds.comparison/1";
  doc["with"] = summary_json(r.with_guidance);
  doc["without"] = summary_json(r.without_guidance);
  ordered_json diff;
  for (std::size_t i = 0; i < kNumMetricFields; ++i) {
    const auto& d = r.percent_diff[i];
    diff[std::string(metric_field_names()[i])] = d ? ordered_json(*d) : ordered_json();
  }
  doc["percent_diff"] = std::move(diff);
  doc["partial"] = false;
  return doc.dump(2) + "\n";
}

void write_comparison_csv(std::ostream& out, const ComparisonReport& r) {
  const bool sd = r.with_guidance.stddev && r.without_guidance.stddev;
  out << (sd ? "metric,with,with_std,without,without_std,percent_diff\n"
             : "metric,with,without,percent_diff\n");
  const auto a = metric_values(r.with_guidance.mean);
  const auto b = metric_values(r.without_guidance.mean);
  for (std::size_t i = 0; i < kNumMetricFields; ++i) {
    std::string row(metric_field_names()[i]);
    put(row, a[i]);
    if (sd) put(row, (*r.with_guidance.stddev)[i]);
    put(row, b[i]);
    if (sd) put(row, (*r.without_guidance.stddev)[i]);
    if (r.percent_diff[i]) {
      put(row, *r.percent_diff[i]);
    } else {
      put(row, std::string_view(""));
    }
    out << row << '\n';
  }
}

}  // namespace gds
