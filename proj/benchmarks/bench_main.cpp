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

#include <benchmark/benchmark.h>

#include <optional>

#include "gds/admittance.hpp"
#include "gds/metrics.hpp"
#include "gds/sim.hpp"
#include "gds/workpiece.hpp"

namespace {

using namespace gds;

void BM_AdmittanceStep(benchmark::State& state) {
  const auto method = static_cast<Discretization>(state.range(0));
  AdmittanceState adm(phase_params(PhaseKind::kFreeMotion, Condition::kWithGuidance), method);
  const Wrench6 w{{10, -3, 2}, {0.1, 0.2, -0.3}};
  for (auto _ : state) benchmark::DoNotOptimize(adm.step(w, 0.001));
}
BENCHMARK(BM_AdmittanceStep)
    ->Arg(static_cast<int>(Discretization::kExactZoh))
    ->Arg(static_cast<int>(Discretization::kImplicitEuler));

void BM_SimulatorStep(benchmark::State& state) {
  const Scenario sc = Scenario::experiment_one(Condition::kWithGuidance);
  std::optional<Simulator> sim(std::in_place, sc);
  for (auto _ : state) {
    if (sim->finished()) {
      state.PauseTiming();
      sim.emplace(sc);
      state.ResumeTiming();
    }
    benchmark::DoNotOptimize(sim->step());
  }
}
BENCHMARK(BM_SimulatorStep);

void BM_FullRun(benchmark::State& state) {
  const Scenario sc = Scenario::experiment_one(static_cast<Condition>(state.range(0)));
  const auto targets = build_targets(sc);
  for (auto _ : state) benchmark::DoNotOptimize(compute_metrics(run(sc), targets).t_tot);
}
BENCHMARK(BM_FullRun)
    ->Arg(static_cast<int>(Condition::kWithGuidance))
    ->Arg(static_cast<int>(Condition::kWithoutGuidance))
    ->Unit(benchmark::kMillisecond);

void BM_MeshQuery(benchmark::State& state) {
  const CylinderPatch cyl{{0, 0, 0}, Vec3::unit_y(), 0.2, 0.3};
  const auto segments = static_cast<int>(state.range(0));
  const Surface mesh = tessellate_cylinder(cyl, Vec3::unit_z(), 1.2, segments, segments / 4);
  const Vec3 p{0.05, 0.1, 0.21};
  for (auto _ : state) benchmark::DoNotOptimize(query_surface(mesh, p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MeshQuery)->RangeMultiplier(2)->Range(16, 256)->Complexity();

}  // namespace

BENCHMARK_MAIN();
