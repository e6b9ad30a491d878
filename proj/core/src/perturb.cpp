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

#include "fdlab/perturb.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "fdlab/error.hpp"

namespace fdlab {

Axis parse_axis(std::string_view text) {
  if (text == "x" || text == "X") return Axis::X;
  if (text == "y" || text == "Y") return Axis::Y;
  if (text == "z" || text == "Z") return Axis::Z;
  throw ValidationError("unknown axis '" + std::string(text) + "' (expected x, y or z)");
}

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    case Axis::Z: return "z";
  }
  return "?";
}

std::vector<int> PerturbationSpec::resolved_targets(int qubits) const {
  if (targets) return *targets;
  std::vector<int> all(static_cast<std::size_t>(qubits));
  for (int j = 0; j < qubits; ++j) all[static_cast<std::size_t>(j)] = j;
  return all;
}

std::vector<double> PerturbationSpec::resolved_weights(int qubits) const {
  if (!weights.empty()) return weights;
  return std::vector<double>(resolved_targets(qubits).size(), 1.0);
}

void PerturbationSpec::validate(int qubits) const {
  if (!std::isfinite(strength)) throw ValidationError("perturbation: strength must be finite");
  if (qubits < 1) throw ValidationError("perturbation: no system qubits to target");
  if (targets && targets->empty()) throw ValidationError("perturbation: empty target set");
  const std::vector<int> t = resolved_targets(qubits);
  std::set<int> seen;
  for (int q : t) {
    if (q < 0 || q >= qubits) {
      throw ValidationError("perturbation: target qubit " + std::to_string(q) + " out of range");
    }
    if (!seen.insert(q).second) {
      throw ValidationError("perturbation: duplicate target qubit " + std::to_string(q));
    }
  }
  if (!weights.empty() && weights.size() != t.size()) {
    throw ValidationError("perturbation: expected one weight per target");
  }
  for (double w : weights) {
    if (!std::isfinite(w)) throw ValidationError("perturbation: non-finite weight");
  }
}

Perturbation Perturbation::from_generator(HermitianMatrix v) {
  UnitaryMatrix p = matexp_hermitian(v, 1.0);
  return Perturbation{std::move(p), std::move(v), std::nullopt};
}

Perturbation build_z_perturbation(const PerturbationSpec& spec, int qubits) {
  spec.validate(qubits);
  const std::vector<int> targets = spec.resolved_targets(qubits);
  const std::vector<double> weights = spec.resolved_weights(qubits);
  const Index dim = Index{1} << qubits;
  Vector eig(dim);
  for (Index x = 0; x < dim; ++x) {
    double lambda = 0.0;
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const int sign = ((x >> (qubits - 1 - targets[t])) & 1) == 0 ? 1 : -1;
      lambda += weights[t] * sign;
    }
    eig(x) = spec.strength * lambda;
  }
  Vector phases(dim);
  for (Index x = 0; x < dim; ++x) phases(x) = std::polar(1.0, -eig(x).real());
  PerturbationSpec stored = spec;
  stored.axis = Axis::Z;
  return Perturbation{UnitaryMatrix(Matrix(phases.asDiagonal())),
                      HermitianMatrix(Matrix(eig.asDiagonal())), stored};
}

Perturbation conjugate_axis(const Perturbation& p, Axis axis, int qubits) {
  if (!p.spec || p.spec->axis != Axis::Z) {
    throw ValidationError("conjugate_axis: perturbation must be built about z");
  }
  if (axis == Axis::Z) return p;
  const double c = std::cos(std::numbers::pi / 4.0);
  const double s = std::sin(std::numbers::pi / 4.0);
  Matrix r(2, 2);
  if (axis == Axis::X) {
    // exp(-i pi/4 Y)
    r << c, -s, s, c;
  } else {
    // exp(+i pi/4 X)
    r << c, Complex(0.0, s), Complex(0.0, s), c;
  }
  const std::vector<int> targets = p.spec->resolved_targets(qubits);
  std::vector<bool> is_target(static_cast<std::size_t>(qubits), false);
  for (int q : targets) is_target[static_cast<std::size_t>(q)] = true;
  Matrix full = Matrix::Identity(1, 1);
  for (int q = 0; q < qubits; ++q) {
    full = kron(full, is_target[static_cast<std::size_t>(q)] ? r : pauli(PauliAxis::I));
  }
  PerturbationSpec spec = *p.spec;
  spec.axis = axis;
  Matrix pu = full * p.matrix() * full.adjoint();
  Matrix v = full * p.generator.matrix() * full.adjoint();
  return Perturbation{UnitaryMatrix(std::move(pu)), HermitianMatrix(Matrix((v + v.adjoint()) * 0.5)),
                      spec};
}

Perturbation build_perturbation(const PerturbationSpec& spec, int qubits) {
  return conjugate_axis(build_z_perturbation(spec, qubits), spec.axis, qubits);
}

double eigenvalue_variance(const HermitianMatrix& v) {
  const RealVector values = eigh(v).values;
  const double n = static_cast<double>(values.size());
  const double mean = values.sum() / n;
  return (values.array() - mean).square().sum() / n;
}

}  // namespace fdlab
