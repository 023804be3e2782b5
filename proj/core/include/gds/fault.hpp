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

#include <stdexcept>
#include <string>

namespace gds {

/// Base class of every error raised by the simulator core.
class Fault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite or otherwise unusable sensor input.
class SensorFault : public Fault {
 public:
  using Fault::Fault;
};

/// Degenerate geometry: collinear samples, parallel reference, far-off point.
class GeometryFault : public Fault {
 public:
  using Fault::Fault;
};

/// A phase transition outside the task sequence.
class StateMachineFault : public Fault {
 public:
  using Fault::Fault;
};

/// Malformed scenario or input file. `where` names the field or line.
class ConfigError : public Fault {
 public:
  ConfigError(std::string where, const std::string& what)
      : Fault(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}

  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

}  // namespace gds
