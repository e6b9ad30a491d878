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

// Perturbation operators P = exp(-iV) built from controlled z rotations of
// the system register, with optional conjugation onto the x or y axis.

#include <optional>
#include <string_view>
#include <vector>

#include "fdlab/qcore.hpp"

namespace fdlab {

enum class Axis { X, Y, Z };

Axis parse_axis(std::string_view text);
std::string_view to_string(Axis axis);

struct PerturbationSpec {
  double strength = 0.0;            // delta, radians
  Axis axis = Axis::Z;
  std::optional<std::vector<int>> targets;  // unset = every system qubit
  std::vector<double> weights;              // empty = all ones; else one per target

  /// Targets with the every-qubit default resolved.
  std::vector<int> resolved_targets(int qubits) const;
  std::vector<double> resolved_weights(int qubits) const;
  void validate(int qubits) const;
};

/// P together with its generator V; P = exp(-iV) holds to 1e-10.
struct Perturbation {
  UnitaryMatrix unitary;
  HermitianMatrix generator;
  std::optional<PerturbationSpec> spec;  // unset for generic generators

  /// Generic perturbation exp(-iV) for an arbitrary Hermitian generator.
  static Perturbation from_generator(HermitianMatrix v);

  Index dim() const noexcept { return unitary.dim(); }
  const Matrix& matrix() const noexcept { return unitary.matrix(); }
};

/// V = delta * sum_{j in targets} w_j Z_j on 2^K dimensions, P diagonal.
/// `spec.axis` is ignored; the result is always about z.
Perturbation build_z_perturbation(const PerturbationSpec& spec, int qubits);

/// R P R^dagger (and R V R^dagger) with R applied on the target qubits only:
/// exp(-i pi/4 Y) maps Z to X, exp(+i pi/4 X) maps Z to Y. `p` must be built
/// about z; Axis::Z returns it unchanged.
Perturbation conjugate_axis(const Perturbation& p, Axis axis, int qubits);

/// build_z_perturbation followed by conjugate_axis(spec.axis).
Perturbation build_perturbation(const PerturbationSpec& spec, int qubits);

/// Population variance of the spectrum of V,
/// (1/N) sum l_i^2 - ((1/N) sum l_i)^2.
double eigenvalue_variance(const HermitianMatrix& v);

}  // namespace fdlab
