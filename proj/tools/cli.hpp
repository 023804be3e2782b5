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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gds/phase.hpp"

namespace gds::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFault = 1;
inline constexpr int kExitConfig = 2;

enum class ConditionSelector { kScenario, kWith, kWithout, kBoth };

struct RunManifest {
  std::filesystem::path scenario;
  std::filesystem::path out_dir;
  std::vector<std::uint64_t> seeds;  // empty = the scenario's own seed
  ConditionSelector conditions = ConditionSelector::kScenario;
  bool emit_trace = true;
  bool emit_metrics = true;
  bool emit_comparison_csv = true;
  bool dry_run = false;
  unsigned jobs = 0;  // 0 = hardware concurrency

  /// Throws ConfigError on duplicate seeds or an unusable output directory.
  void validate() const;
};

/// "1,2,5" or ranges such as "1-10". Throws ConfigError on malformed input.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);
std::vector<double> parse_value_list(const std::string& text);

int cmd_run(const RunManifest& manifest, std::ostream& out, std::ostream& err);
int cmd_compare(const RunManifest& manifest, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunManifest& manifest, const std::string& parameter,
              const std::vector<double>& values, std::ostream& out, std::ostream& err);
int cmd_validate(const std::filesystem::path& scenario, std::ostream& out, std::ostream& err);

/// Full command-line entry point; returns the process exit status.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gds::cli
