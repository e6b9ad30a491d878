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

#include "fdlab/maps.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fdlab/error.hpp"
#include "fdlab/parallel.hpp"

namespace fdlab {
namespace {

constexpr int kMaxQubits = 12;

// +1 when qubit j (0 = most significant) is |0> in basis state x.
int z_sign(Index x, int j, int qubits) {
  return ((x >> (qubits - 1 - j)) & 1) == 0 ? 1 : -1;
}

// m <- (I (x) ... (x) g_j (x) ... (x) I) m, without forming the full operator.
void apply_qubit_gate_left(Matrix& m, const Matrix& g, int qubit, int qubits) {
  const Index stride = Index{1} << (qubits - 1 - qubit);
  const Index dim = m.rows();
  const Complex g00 = g(0, 0), g01 = g(0, 1), g10 = g(1, 0), g11 = g(1, 1);
  // Column-major storage: walk each column contiguously.
  for (Index c = 0; c < m.cols(); ++c) {
    Complex* col = m.col(c).data();
    for (Index base = 0; base < dim; base += 2 * stride) {
      for (Index i0 = base; i0 < base + stride; ++i0) {
        const Complex a = col[i0];
        const Complex b = col[i0 + stride];
        col[i0] = g00 * a + g01 * b;
        col[i0 + stride] = g10 * a + g11 * b;
      }
    }
  }
}

TraceMoment summarize(const std::vector<double>& values) {
  TraceMoment out;
  out.samples = static_cast<int>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.std_dev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  out.std_error = out.std_dev / std::sqrt(static_cast<double>(values.size()));
  return out;
}

}  // namespace

RegularHamiltonianParams RegularHamiltonianParams::defaults(int qubits) {
  RegularHamiltonianParams p;
  const double base[] = {500.0, 300.0, 200.0, 100.0};
  double tail = 100.0;
  for (int j = 0; j < qubits; ++j) {
    if (j < 4) {
      p.shifts.push_back(base[j]);
    } else {
      tail *= 0.5;
      p.shifts.push_back(tail);
    }
  }
  const double j_nn = 40.0 / (2.0 * std::numbers::pi);
  p.couplings.assign(static_cast<std::size_t>(qubits),
                     std::vector<double>(static_cast<std::size_t>(qubits), 0.0));
  for (int j = 0; j + 1 < qubits; ++j) {
    p.couplings[j][j + 1] = j_nn;
    p.couplings[j + 1][j] = j_nn;
  }
  p.dt = 1e-3;
  return p;
}

void RegularHamiltonianParams::validate(int qubits) const {
  const auto k = static_cast<std::size_t>(qubits);
  if (shifts.size() != k) {
    throw ValidationError("regular map: expected " + std::to_string(qubits) +
                          " chemical shifts, got " + std::to_string(shifts.size()));
  }
  if (couplings.size() != k) throw ValidationError("regular map: coupling matrix must be KxK");
  for (std::size_t a = 0; a < k; ++a) {
    if (couplings[a].size() != k) throw ValidationError("regular map: coupling matrix must be KxK");
  }
  for (std::size_t a = 0; a < k; ++a) {
    if (couplings[a][a] != 0.0) throw ValidationError("regular map: J_jj must be zero");
    for (std::size_t b = a + 1; b < k; ++b) {
      if (std::abs(couplings[a][b] - couplings[b][a]) > 1e-12) {
        throw ValidationError("regular map: coupling matrix is not symmetric at (" +
                              std::to_string(a) + "," + std::to_string(b) + ")");
      }
    }
  }
  for (double w : shifts) {
    if (!std::isfinite(w)) throw ValidationError("regular map: non-finite shift");
  }
  if (!std::isfinite(dt)) throw ValidationError("regular map: non-finite timestep");
}

void MapSpec::validate() const {
  if (qubits < 1 || qubits > kMaxQubits) {
    throw ValidationError("map: qubit count must be in [1, 12], got " + std::to_string(qubits));
  }
  if (kind == MapKind::PseudoRandom) {
    if (qubits < 2) throw ValidationError("pseudo-random map: needs at least 2 qubits");
    if (iterations < 1) throw ValidationError("pseudo-random map: iterations must be >= 1");
  } else {
    regular.validate(qubits);
  }
}

Vector coupling_layer_diagonal(int qubits) {
  if (qubits < 2 || qubits > kMaxQubits) {
    throw ValidationError("coupling_layer: needs 2..12 qubits, got " + std::to_string(qubits));
  }
  const Index dim = Index{1} << qubits;
  Vector diag(dim);
  for (Index x = 0; x < dim; ++x) {
    int sum = 0;
    for (int j = 0; j + 1 < qubits; ++j) sum += z_sign(x, j, qubits) * z_sign(x, j + 1, qubits);
    diag(x) = std::polar(1.0, std::numbers::pi / 4.0 * sum);
  }
  return diag;
}

UnitaryMatrix coupling_layer(int qubits) {
  return UnitaryMatrix(Matrix(coupling_layer_diagonal(qubits).asDiagonal()));
}

Matrix random_qubit_rotation(Rng& rng, RotationMeasure measure) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  double nx = 0.0, ny = 0.0, nz = 0.0, norm = 0.0;
  do {
    nx = normal(rng);
    ny = normal(rng);
    nz = normal(rng);
    norm = std::sqrt(nx * nx + ny * ny + nz * nz);
  } while (norm < 1e-12);
  nx /= norm;
  ny /= norm;
  nz /= norm;
  double theta = 2.0 * std::numbers::pi * uniform(rng);
  // Haar: rejection sampling from (1 - cos theta)/(2 pi) = sin^2(theta/2)/pi.
  while (measure == RotationMeasure::Haar) {
    const double s = std::sin(0.5 * theta);
    if (uniform(rng) < s * s) break;
    theta = 2.0 * std::numbers::pi * uniform(rng);
  }
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const Complex i(0.0, 1.0);
  Matrix r(2, 2);
  r(0, 0) = c - i * s * nz;
  r(0, 1) = -i * s * Complex(nx, -ny);
  r(1, 0) = -i * s * Complex(nx, ny);
  r(1, 1) = c + i * s * nz;
  return r;
}

UnitaryMatrix pseudo_random_map(const MapSpec& spec) {
  if (spec.kind != MapKind::PseudoRandom) {
    throw ValidationError("pseudo_random_map: spec kind is not pseudo_random");
  }
  spec.validate();
  Rng rng(spec.seed);
  const Index dim = Index{1} << spec.qubits;
  const Vector coupling = coupling_layer_diagonal(spec.qubits);
  Matrix u = Matrix::Identity(dim, dim);
  for (int it = 0; it < spec.iterations; ++it) {
    for (int q = 0; q < spec.qubits; ++q) {
      apply_qubit_gate_left(u, random_qubit_rotation(rng, spec.rotation), q, spec.qubits);
    }
    u = coupling.asDiagonal() * u;
  }
  return UnitaryMatrix(std::move(u));
}

UnitaryMatrix regular_map(const MapSpec& spec) {
  if (spec.kind != MapKind::Regular) {
    throw ValidationError("regular_map: spec kind is not regular");
  }
  spec.validate();
  const int k = spec.qubits;
  const auto& p = spec.regular;
  const Index dim = Index{1} << k;
  Vector diag(dim);
  for (Index x = 0; x < dim; ++x) {
    double energy = 0.0;
    for (int j = 0; j < k; ++j) {
      energy += 0.5 * p.shifts[j] * z_sign(x, j, k);
      for (int l = j + 1; l < k; ++l) {
        energy += 0.5 * std::numbers::pi * p.couplings[j][l] * z_sign(x, j, k) * z_sign(x, l, k);
      }
    }
    diag(x) = std::polar(1.0, -energy * p.dt);
  }
  return UnitaryMatrix(Matrix(diag.asDiagonal()));
}

UnitaryMatrix build_map(const MapSpec& spec) {
  return spec.kind == MapKind::PseudoRandom ? pseudo_random_map(spec) : regular_map(spec);
}

TraceMoment ensemble_trace_moment(int qubits, int iterations, int samples,
                                  std::uint64_t master_seed, int threads,
                                  RotationMeasure rotation) {
  if (samples < 2) throw ValidationError("ensemble_trace_moment: needs at least 2 samples");
  std::vector<double> values(static_cast<std::size_t>(samples));
  parallel_for(values.size(), threads, [&](std::size_t i) {
    MapSpec spec;
    spec.kind = MapKind::PseudoRandom;
    spec.qubits = qubits;
    spec.iterations = iterations;
    spec.seed = derive_seed(master_seed, i);
    spec.rotation = rotation;
    values[i] = std::norm(pseudo_random_map(spec).trace());
  });
  return summarize(values);
}

TraceMoment haar_trace_moment(Index dim, int samples, std::uint64_t master_seed, int threads) {
  if (samples < 2) throw ValidationError("haar_trace_moment: needs at least 2 samples");
  std::vector<double> values(static_cast<std::size_t>(samples));
  parallel_for(values.size(), threads, [&](std::size_t i) {
    Rng rng(derive_seed(master_seed, i));
    values[i] = std::norm(haar_unitary(dim, rng).trace());
  });
  return summarize(values);
}

}  // namespace fdlab
