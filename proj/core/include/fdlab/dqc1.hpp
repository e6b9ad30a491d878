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

// One-clean-qubit (DQC1) trace measurement: a pseudo-pure probe qubit, a
// maximally mixed register, Hadamard on the probe, controlled-W and a final
// probe rotation whose z readout gives <sigma_x> or <sigma_y>.
//
// Sign convention: <sigma_x> = eps Re Tr(W)/N and <sigma_y> = eps Im Tr(W)/N.

#include "fdlab/perturb.hpp"
#include "fdlab/qcore.hpp"

namespace fdlab {

/// rho_eps = (1 - eps)/2 I + eps |0><0| with eps in (0, 1].
class ProbeState {
 public:
  explicit ProbeState(double epsilon = 1.0);

  double epsilon() const noexcept { return epsilon_; }
  DensityOperator density() const;

 private:
  double epsilon_;
};

struct Dqc1Outcome {
  double re = 0.0;         // <sigma_x> of the probe
  double im = 0.0;         // <sigma_y> of the probe
  double epsilon = 1.0;
  int shots = 0;           // 0 = exact expectation values
  double stderr_re = 0.0;
  double stderr_im = 0.0;

  /// (re + i im)/eps, the estimate of Tr(W)/N.
  Complex normalized_trace() const { return Complex(re, im) / epsilon; }
};

/// W = (U^n)^dagger (PU)^n from two running powers.
UnitaryMatrix build_echo_operator(const UnitaryMatrix& u, const Perturbation& p, int steps);

/// Probability of reading the probe in |0> after the x (first) and y
/// (second) readout rotations, from an exact simulation of the circuit on
/// the 2N-dimensional probe (x) register state.
struct ReadoutProbabilities {
  double x0 = 0.5;
  double y0 = 0.5;
};
ReadoutProbabilities dqc1_readout_probabilities(const UnitaryMatrix& w, const ProbeState& probe);

/// Exact expectation values of the protocol; zero standard errors.
Dqc1Outcome dqc1_expectation(const UnitaryMatrix& w, const ProbeState& probe);

/// Finite-shot estimate: ceil(shots/2) binary outcomes in the x readout and
/// floor(shots/2) in the y readout, with binomial standard errors.
/// Requires shots >= 2 so both readouts are sampled.
Dqc1Outcome dqc1_sampled(const UnitaryMatrix& w, const ProbeState& probe, int shots, Rng& rng);

/// Oracle mode: instead of the maximally mixed register, prepare random
/// computational basis states |x> and average the exact probe signal
/// eps <x|W|x>. Converges to eps Tr(W)/N; standard errors are the sample
/// standard deviations over sqrt(samples).
Dqc1Outcome dqc1_basis_sampled(const UnitaryMatrix& w, const ProbeState& probe, int samples,
                               Rng& rng);

}  // namespace fdlab
