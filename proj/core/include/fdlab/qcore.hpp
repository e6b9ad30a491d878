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

// Dense complex linear algebra and quantum-state primitives.
//
// Conventions used throughout the library:
//   * qubit 0 is the most significant tensor factor, so basis index
//     x = b_0 b_1 ... b_{K-1} in binary and sigma_z on qubit j has
//     eigenvalue +1 when b_j = 0;
//   * matexp_hermitian(H, t) = exp(-i H t).

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace fdlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Seeded generator used by every stochastic routine. Always passed
/// explicitly; the library keeps no global random state.
using Rng = std::mt19937_64;

inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;
inline constexpr double kNormTol = 1e-12;

/// Largest entry modulus.
double max_abs(const Matrix& m);

bool is_power_of_two(Index n) noexcept;
bool is_unitary(const Matrix& m, double tol = kUnitarityTol);
bool is_hermitian(const Matrix& m, double tol = kHermiticityTol);

/// Square matrix with ||U^dagger U - I||_max <= 1e-10, checked on construction.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Matrix m);

  static UnitaryMatrix identity(Index dim);

  const Matrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }
  Complex trace() const { return m_.trace(); }
  UnitaryMatrix adjoint() const;

  friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b);

 private:
  struct Trusted {};
  UnitaryMatrix(Matrix m, Trusted) : m_(std::move(m)) {}

  Matrix m_;
};

/// Square matrix with ||H - H^dagger||_max <= 1e-12. The stored matrix is
/// the exact Hermitian part of the input.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(Matrix m);

  static HermitianMatrix zero(Index dim);

  const Matrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

  HermitianMatrix scaled(double factor) const;
  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);

 private:
  Matrix m_;
};

/// Hermitian, unit-trace, positive semidefinite (eigenvalues >= -1e-10).
class DensityOperator {
 public:
  explicit DensityOperator(Matrix m);

  static DensityOperator maximally_mixed(Index dim);
  static DensityOperator pure(const Vector& amplitudes);

  const Matrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

 private:
  Matrix m_;
};

/// Normalized state vector (2-norm within 1e-12 of one).
class PureState {
 public:
  explicit PureState(Vector amplitudes);

  static PureState basis(Index dim, Index index);

  const Vector& amplitudes() const noexcept { return v_; }
  Index dim() const noexcept { return v_.size(); }

 private:
  Vector v_;
};

/// Spectrum of a Hermitian matrix: ascending eigenvalues and matching
/// orthonormal eigenvector columns.
struct HermitianEigen {
  RealVector values;
  Matrix vectors;
};

HermitianEigen eigh(const HermitianMatrix& h);

/// Kronecker product; block (i, j) of the result is a(i, j) * b.
Matrix kron(const Matrix& a, const Matrix& b);

/// exp(-i H t) through the Hermitian eigendecomposition of H.
UnitaryMatrix matexp_hermitian(const HermitianMatrix& h, double t);

enum class PauliAxis { I, X, Y, Z };

struct PauliFactor {
  int qubit;
  PauliAxis axis;
};

/// 2x2 Pauli matrix (or identity).
Matrix pauli(PauliAxis axis);

/// Tensor product over `qubits` factors with the listed Pauli at each listed
/// position and identity elsewhere. Duplicate or out-of-range indices throw.
Matrix pauli_string(std::span<const PauliFactor> factors, int qubits);
Matrix pauli_string(std::initializer_list<PauliFactor> factors, int qubits);

/// Traces out every factor except `keep`. `dims` lists the factor
/// dimensions in tensor order and must multiply to the matrix dimension.
Matrix partial_trace(const Matrix& m, std::size_t keep, std::span<const Index> dims);
DensityOperator partial_trace(const DensityOperator& rho, std::size_t keep,
                              std::span<const Index> dims);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the diagonal
/// of R rotated to the positive real axis.
UnitaryMatrix haar_unitary(Index dim, Rng& rng);

/// Haar-distributed pure state (normalized complex Gaussian vector).
PureState haar_state(Index dim, Rng& rng);

/// Hermitian matrix from the Gaussian unitary ensemble, scaled so that
/// E|H_ij|^2 = 1/dim (semicircle of radius 2).
HermitianMatrix gue_hermitian(Index dim, Rng& rng);

/// Independent 64-bit seed for stream `index` of a campaign seeded with
/// `master`. Pure function, so parallel workers need no coordination.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

}  // namespace fdlab
