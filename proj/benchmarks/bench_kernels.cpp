// Copyright 2026 The fdlab Authors
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

#include <array>

#include "fdlab/decoherence.hpp"
#include "fdlab/dqc1.hpp"
#include "fdlab/fidelity.hpp"
#include "fdlab/maps.hpp"

using namespace fdlab;

namespace {

void BM_MatexpHermitian(benchmark::State& state) {
  const auto dim = static_cast<Index>(state.range(0));
  Rng rng(1);
  const HermitianMatrix h = gue_hermitian(dim, rng);
  for (auto _ : state) benchmark::DoNotOptimize(matexp_hermitian(h, 0.3));
}
BENCHMARK(BM_MatexpHermitian)->Arg(16)->Arg(64)->Arg(256);

void BM_HaarUnitary(benchmark::State& state) {
  const auto dim = static_cast<Index>(state.range(0));
  Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(haar_unitary(dim, rng));
}
BENCHMARK(BM_HaarUnitary)->Arg(16)->Arg(64);

void BM_PseudoRandomMap(benchmark::State& state) {
  MapSpec spec;
  spec.qubits = static_cast<int>(state.range(0));
  spec.iterations = 4;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    spec.seed = ++seed;
    benchmark::DoNotOptimize(pseudo_random_map(spec));
  }
}
BENCHMARK(BM_PseudoRandomMap)->Arg(4)->Arg(6)->Arg(8);

void BM_AverageFidelityGeneric(benchmark::State& state) {
  MapSpec spec;
  spec.qubits = static_cast<int>(state.range(0));
  const UnitaryMatrix u = pseudo_random_map(spec);
  const Perturbation p = build_perturbation(PerturbationSpec{0.3, Axis::X, std::nullopt, {}}, spec.qubits);
  for (auto _ : state) benchmark::DoNotOptimize(average_fidelity(u, p, 30));
}
BENCHMARK(BM_AverageFidelityGeneric)->Arg(4)->Arg(6);

void BM_AverageFidelityDiagonal(benchmark::State& state) {
  MapSpec spec;
  spec.kind = MapKind::Regular;
  spec.qubits = static_cast<int>(state.range(0));
  spec.regular = RegularHamiltonianParams::defaults(spec.qubits);
  const UnitaryMatrix u = regular_map(spec);
  const Perturbation p = build_z_perturbation(PerturbationSpec{0.3, Axis::Z, std::nullopt, {}}, spec.qubits);
  for (auto _ : state) benchmark::DoNotOptimize(average_fidelity(u, p, 30));
}
BENCHMARK(BM_AverageFidelityDiagonal)->Arg(4)->Arg(8);

void BM_Dqc1Expectation(benchmark::State& state) {
  Rng rng(3);
  const UnitaryMatrix w = haar_unitary(static_cast<Index>(state.range(0)), rng);
  const ProbeState probe(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(dqc1_expectation(w, probe));
}
BENCHMARK(BM_Dqc1Expectation)->Arg(16)->Arg(64);

void BM_TrotterCurve(benchmark::State& state) {
  Rng rng(4);
  const EnvironmentModel env = gue_environment(static_cast<Index>(state.range(0)), {0.0, 0.8}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(trotter_decoherence_curve(env, 1, 0, 0.02, 1500));
}
BENCHMARK(BM_TrotterCurve)->Arg(16);

void BM_PartialTrace(benchmark::State& state) {
  const Matrix rho = Matrix::Identity(64, 64) / 64.0;
  const std::array<Index, 2> dims{4, 16};
  for (auto _ : state) benchmark::DoNotOptimize(partial_trace(rho, 0, dims));
}
BENCHMARK(BM_PartialTrace);

}  // namespace

BENCHMARK_MAIN();
