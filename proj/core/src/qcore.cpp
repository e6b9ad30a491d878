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

#include "fdlab/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "fdlab/error.hpp"

namespace fdlab {
namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ValidationError(std::string(what) + ": expected a non-empty square matrix, got " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_power_of_two(Index n) noexcept { return n > 0 && (n & (n - 1)) == 0; }

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const Matrix gram = m.adjoint() * m;
  return max_abs(gram - Matrix::Identity(m.rows(), m.cols())) <= tol;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

// --- UnitaryMatrix ---------------------------------------------------------

UnitaryMatrix::UnitaryMatrix(Matrix m) : m_(std::move(m)) {
  require_square(m_, "UnitaryMatrix");
  const Matrix gram = m_.adjoint() * m_;
  const double err = max_abs(gram - Matrix::Identity(m_.rows(), m_.cols()));
  if (!(err <= kUnitarityTol)) {
    throw ValidationError("UnitaryMatrix: ||U^dagger U - I||_max = " + std::to_string(err) +
                          " exceeds tolerance");
  }
}

UnitaryMatrix UnitaryMatrix::identity(Index dim) {
  if (dim <= 0) throw ValidationError("UnitaryMatrix::identity: dimension must be positive");
  return UnitaryMatrix(Matrix::Identity(dim, dim), Trusted{});
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
  return UnitaryMatrix(Matrix(m_.adjoint()), Trusted{});
}

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) {
    throw ValidationError("UnitaryMatrix product: dimension mismatch " + std::to_string(a.dim()) +
                          " vs " + std::to_string(b.dim()));
  }
  return UnitaryMatrix(Matrix(a.m_ * b.m_));
}

// --- HermitianMatrix -------------------------------------------------------

HermitianMatrix::HermitianMatrix(Matrix m) {
  require_square(m, "HermitianMatrix");
  const double err = max_abs(m - m.adjoint());
  if (!(err <= kHermiticityTol)) {
    throw ValidationError("HermitianMatrix: ||H - H^dagger||_max = " + std::to_string(err) +
                          " exceeds tolerance");
  }
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianMatrix HermitianMatrix::zero(Index dim) {
  return HermitianMatrix(Matrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::scaled(double factor) const {
  return HermitianMatrix(Matrix(m_ * factor));
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("HermitianMatrix sum: dimension mismatch");
  return HermitianMatrix(Matrix(a.m_ + b.m_));
}

// --- DensityOperator -------------------------------------------------------

DensityOperator::DensityOperator(Matrix m) {
  require_square(m, "DensityOperator");
  if (!(max_abs(m - m.adjoint()) <= kHermiticityTol)) {
    throw ValidationError("DensityOperator: matrix is not Hermitian");
  }
  const Complex tr = m.trace();
  if (!(std::abs(tr - Complex(1.0, 0.0)) <= kTraceTol)) {
    throw ValidationError("DensityOperator: trace " + std::to_string(tr.real()) + " != 1");
  }
  m_ = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("DensityOperator: eigenvalue computation failed");
  }
  if (solver.eigenvalues().minCoeff() < -kPositivityTol) {
    throw ValidationError("DensityOperator: negative eigenvalue " +
                          std::to_string(solver.eigenvalues().minCoeff()));
  }
}

DensityOperator DensityOperator::maximally_mixed(Index dim) {
  if (dim <= 0) throw ValidationError("maximally_mixed: dimension must be positive");
  return DensityOperator(Matrix(Matrix::Identity(dim, dim) / static_cast<double>(dim)));
}

DensityOperator DensityOperator::pure(const Vector& amplitudes) {
  const PureState psi(amplitudes);
  return DensityOperator(Matrix(psi.amplitudes() * psi.amplitudes().adjoint()));
}

// --- PureState -------------------------------------------------------------

PureState::PureState(Vector amplitudes) : v_(std::move(amplitudes)) {
  if (v_.size() == 0) throw ValidationError("PureState: empty amplitude vector");
  const double norm = v_.norm();
  if (!(std::abs(norm - 1.0) <= kNormTol)) {
    throw ValidationError("PureState: norm " + std::to_string(norm) + " != 1");
  }
}

PureState PureState::basis(Index dim, Index index) {
  if (index < 0 || index >= dim) throw ValidationError("PureState::basis: index out of range");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

// --- Operations ------------------------------------------------------------

HermitianEigen eigh(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigh: Hermitian eigendecomposition failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix kron(const Matrix& a, const Matrix& b) {
  require_square(a, "kron (left)");
  require_square(b, "kron (right)");
  const Index p = b.rows();
  Matrix out(a.rows() * p, a.cols() * p);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * p, j * p, p, p) = a(i, j) * b;
    }
  }
  return out;
}

UnitaryMatrix matexp_hermitian(const HermitianMatrix& h, double t) {
  const HermitianEigen eig = eigh(h);
  Vector phases(eig.values.size());
  for (Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::polar(1.0, -eig.values(i) * t);
  }
  return UnitaryMatrix(Matrix(eig.vectors * phases.asDiagonal() * eig.vectors.adjoint()));
}

Matrix pauli(PauliAxis axis) {
  Matrix m(2, 2);
  switch (axis) {
    case PauliAxis::I: m << 1, 0, 0, 1; break;
    case PauliAxis::X: m << 0, 1, 1, 0; break;
    case PauliAxis::Y: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case PauliAxis::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

Matrix pauli_string(std::span<const PauliFactor> factors, int qubits) {
  if (qubits < 0 || qubits > 12) throw ValidationError("pauli_string: qubit count out of range");
  std::vector<PauliAxis> axes(static_cast<std::size_t>(qubits), PauliAxis::I);
  std::vector<bool> seen(static_cast<std::size_t>(qubits), false);
  for (const PauliFactor& f : factors) {
    if (f.qubit < 0 || f.qubit >= qubits) {
      throw ValidationError("pauli_string: qubit index " + std::to_string(f.qubit) +
                            " out of range");
    }
    if (seen[static_cast<std::size_t>(f.qubit)]) {
      throw ValidationError("pauli_string: duplicate qubit index " + std::to_string(f.qubit));
    }
    seen[static_cast<std::size_t>(f.qubit)] = true;
    axes[static_cast<std::size_t>(f.qubit)] = f.axis;
  }
  Matrix out = Matrix::Identity(1, 1);
  for (PauliAxis a : axes) out = kron(out, pauli(a));
  return out;
}

Matrix pauli_string(std::initializer_list<PauliFactor> factors, int qubits) {
  return pauli_string(std::span<const PauliFactor>(factors.begin(), factors.size()), qubits);
}

Matrix partial_trace(const Matrix& m, std::size_t keep, std::span<const Index> dims) {
  require_square(m, "partial_trace");
  if (keep >= dims.size()) throw ValidationError("partial_trace: kept factor out of range");
  const Index total = std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>());
  if (total != m.rows()) {
    throw ValidationError("partial_trace: factor dimensions multiply to " +
                          std::to_string(total) + ", matrix has " + std::to_string(m.rows()));
  }
  // Index x = (outer, kept, inner) with row-major factor ordering.
  const Index d = dims[keep];
  const Index inner = std::accumulate(dims.begin() + static_cast<std::ptrdiff_t>(keep) + 1,
                                      dims.end(), Index{1}, std::multiplies<>());
  const Index outer = total / (d * inner);
  Matrix out = Matrix::Zero(d, d);
  for (Index a = 0; a < d; ++a) {
    for (Index b = 0; b < d; ++b) {
      Complex acc = 0.0;
      for (Index o = 0; o < outer; ++o) {
        for (Index i = 0; i < inner; ++i) {
          acc += m((o * d + a) * inner + i, (o * d + b) * inner + i);
        }
      }
      out(a, b) = acc;
    }
  }
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, std::size_t keep,
                              std::span<const Index> dims) {
  return DensityOperator(partial_trace(rho.matrix(), keep, dims));
}

namespace {

Matrix ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = 1.0 / std::sqrt(2.0);
  Matrix z(rows, cols);
  // Fill column-major in a fixed order so results depend only on the seed.
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im) * scale;
    }
  }
  return z;
}

}  // namespace

UnitaryMatrix haar_unitary(Index dim, Rng& rng) {
  if (dim < 1) throw ValidationError("haar_unitary: dimension must be >= 1");
  const Matrix z = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Index j = 0; j < dim; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= (mag > 0.0) ? rjj / mag : Complex(1.0, 0.0);
  }
  return UnitaryMatrix(std::move(q));
}

PureState haar_state(Index dim, Rng& rng) {
  if (dim < 1) throw ValidationError("haar_state: dimension must be >= 1");
  Vector v = ginibre(dim, 1, rng).col(0);
  v /= v.norm();
  return PureState(std::move(v));
}

HermitianMatrix gue_hermitian(Index dim, Rng& rng) {
  if (dim < 1) throw ValidationError("gue_hermitian: dimension must be >= 1");
  const Matrix a = ginibre(dim, dim, rng);
  // (A + A^dagger)/sqrt(2 dim): off-diagonal E|H_ij|^2 = 1/dim.
  Matrix h = (a + a.adjoint()) / std::sqrt(2.0 * static_cast<double>(dim));
  return HermitianMatrix(Matrix((h + h.adjoint()) * 0.5));
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  // Two rounds of splitmix64 finalization over (master, index).
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(master) ^ (index * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL));
}

}  // namespace fdlab
