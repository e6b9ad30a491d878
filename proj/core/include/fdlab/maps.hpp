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

#pragma once

// Generators of the system dynamics: the pseudo-random (chaotic) circuit
// ensemble and the regular, sigma_z-diagonal NMR-like evolution.

#include <cstdint>
#include <vector>

#include "fdlab/qcore.hpp"

namespace fdlab {

enum class MapKind { PseudoRandom, Regular };

/// Angle distribution of the single-qubit rotations exp(-i theta n.sigma/2)
/// (axis always uniform on the sphere). UniformAngle draws theta uniformly
/// on [0, 2 pi); Haar draws it from (1 - cos theta)/(2 pi), which makes each
/// rotation a Haar-random SU(2) element.
enum class RotationMeasure { UniformAngle, Haar };

/// Ising-type Hamiltonian H = sum_j (omega_j/2) Z_j + sum_{j<k} (pi J_jk/2) Z_j Z_k.
/// omega in rad/s, J in Hz, dt in s.
struct RegularHamiltonianParams {
  std::vector<double> shifts;                 // omega_j, one per qubit
  std::vector<std::vector<double>> couplings; // J_jk, symmetric, zero diagonal
  double dt = 1e-3;

  /// Placeholder defaults for K qubits: omega = (500, 300, 200, 100, ...)
  /// rad/s, J = 40/(2 pi) Hz between neighbours, dt = 1 ms. Configuration
  /// values, not measured molecule data.
  static RegularHamiltonianParams defaults(int qubits);

  void validate(int qubits) const;
};

inline constexpr int kDefaultIterations = 4;

struct MapSpec {
  MapKind kind = MapKind::PseudoRandom;
  int qubits = 4;
  int iterations = kDefaultIterations;
  std::uint64_t seed = 0;
  RotationMeasure rotation = RotationMeasure::UniformAngle;
  RegularHamiltonianParams regular;

  void validate() const;
};

/// exp[+i (pi/4) sum_{j=0}^{K-2} Z_j Z_{j+1}]; diagonal.
UnitaryMatrix coupling_layer(int qubits);

/// Phases of coupling_layer as a vector (the matrix diagonal).
Vector coupling_layer_diagonal(int qubits);

/// Random single-qubit rotation exp(-i theta n.sigma/2) with the axis uniform
/// on the sphere and theta drawn according to `measure`.
Matrix random_qubit_rotation(Rng& rng, RotationMeasure measure = RotationMeasure::UniformAngle);

/// Product over `iterations` of (coupling layer) x (independent random
/// rotation on every qubit), the first iteration rightmost. The generator is
/// seeded from spec.seed.
UnitaryMatrix pseudo_random_map(const MapSpec& spec);

/// exp(-i H dt) for the regular Hamiltonian; diagonal.
UnitaryMatrix regular_map(const MapSpec& spec);

/// Dispatches on spec.kind.
UnitaryMatrix build_map(const MapSpec& spec);

struct TraceMoment {
  double mean = 0.0;      // mean |Tr U|^2
  double std_dev = 0.0;   // sample standard deviation of |Tr U|^2
  double std_error = 0.0; // std_dev / sqrt(samples)
  int samples = 0;
};

/// Monte-Carlo estimate of E|Tr U|^2 over the depth-`iterations`
/// pseudo-random ensemble. Sample i uses seed derive_seed(master_seed, i);
/// `threads` workers do not change the result.
TraceMoment ensemble_trace_moment(int qubits, int iterations, int samples,
                                  std::uint64_t master_seed, int threads = 1,
                                  RotationMeasure rotation = RotationMeasure::UniformAngle);

/// Same estimate for Haar-random unitaries of dimension `dim` (CUE value 1).
TraceMoment haar_trace_moment(Index dim, int samples, std::uint64_t master_seed,
                              int threads = 1);

}  // namespace fdlab
