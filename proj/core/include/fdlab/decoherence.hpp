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

// Decoherence of a probe coupled to an engineered environment through
// H = H_E + A_S (x) B_E. In the eigenbasis of A_S (eigenvalues lambda_j) the
// (j, k) coherence of the probe is multiplied by gamma_jk(t).

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fdlab/fidelity.hpp"
#include "fdlab/qcore.hpp"

namespace fdlab {

struct EnvironmentModel {
  HermitianMatrix self_hamiltonian;  // H_E
  HermitianMatrix coupling;          // B
  std::vector<double> lambdas;       // spectrum of the probe operator A_S

  Index env_dim() const noexcept { return self_hamiltonian.dim(); }
  Index probe_dim() const noexcept { return static_cast<Index>(lambdas.size()); }
  void validate() const;
};

/// H_E and B drawn independently from the GUE (E|H_ij|^2 = 1/dim).
EnvironmentModel gue_environment(Index dim, std::vector<double> lambdas, Rng& rng);

struct DecoherenceFactor {
  Complex gamma;
  double t = 0.0;
  double delta = 0.0;  // Trotter step; 0 for the exact evolution
  int j = 0;
  int k = 0;
};

/// First-order Trotter form with m = t/delta slices,
///   (1/N) Tr{ (e^{i delta H_k})^m (e^{-i delta (l_j - l_k) B} e^{-i delta H_k})^m },
/// H_k = H_E + l_k B. t/delta must be a positive integer.
DecoherenceFactor trotter_decoherence_factor(const EnvironmentModel& env, int j, int k, double t,
                                             double delta);

/// gamma_jk at t = m * delta for m = 0..steps in one incremental pass.
std::vector<Complex> trotter_decoherence_curve(const EnvironmentModel& env, int j, int k,
                                               double delta, int steps);

/// Exact reference: evolves (uniform probe superposition) (x) rho_E under
/// exp(-iHt) on the joint space, traces out the environment and returns
/// rho_S(t)[j,k] / rho_S(0)[j,k].
DecoherenceFactor exact_decoherence_factor(const EnvironmentModel& env,
                                           const DensityOperator& rho_env, int j, int k, double t);

/// As above with an explicit probe initial state; throws when
/// rho_S(0)[j,k] vanishes.
DecoherenceFactor exact_decoherence_factor(const EnvironmentModel& env,
                                           const DensityOperator& rho_env,
                                           const DensityOperator& probe_initial, int j, int k,
                                           double t);

/// 1/sqrt(Tr(H^2)/N), the short-time correlation scale of the environment.
/// Returns 0 for H = 0.
double correlation_time(const HermitianMatrix& h);

struct RateScanOptions {
  double t_max = 30.0;
  double delta = 0.02;
  double level = 5.0;                  // fit until |gamma| <= level / N_E
  std::optional<double> skip_time;     // default: correlation_time(H_E)
  double margin = 2.0;
};

struct RateScanEntry {
  int j = 0;
  int k = 0;
  double delta_lambda = 0.0;  // l_j - l_k
  double rate = 0.0;          // per unit time, fitted on ln |gamma|
  double residual = 0.0;
  StepWindow window;
};

/// Fits the decay rate of |gamma_jk(t)| for every listed pair. A pair with
/// l_j = l_k has rate 0. (j, k) and (k, j) share one computation since
/// gamma_kj = conj(gamma_jk). Fit failures are rethrown naming the pair.
std::vector<RateScanEntry> decoherence_rate_scan(const EnvironmentModel& env,
                                                 std::span<const std::pair<int, int>> pairs,
                                                 const RateScanOptions& options = {});

}  // namespace fdlab
