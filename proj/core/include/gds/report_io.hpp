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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gds/metrics.hpp"
#include "gds/sim.hpp"

namespace gds {

/// "0x" followed by 16 lowercase hex digits.
std::string hex64(std::uint64_t v);

/// Column names of the trace CSV, one per scalar of TraceSample.
std::vector<std::string> trace_csv_columns();

/// One row per sample, SI units, 9 significant digits.
void write_trace_csv(std::ostream& out, const Trace& trace);

/// Summary document: digests, completion state and the event list.
std::string events_json(const Trace& trace);

std::string metrics_json(const Metrics& metrics);

/// Means, standard deviations (when more than one run) and percent
/// differences; undefined differences are written as null.
std::string comparison_json(const ComparisonReport& report);
void write_comparison_csv(std::ostream& out, const ComparisonReport& report);

}  // namespace gds
