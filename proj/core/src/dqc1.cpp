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

#include "fdlab/dqc1.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fdlab/error.hpp"

namespace fdlab {
namespace {

// Joint probe (x) register operator in 2x2 block form: block[a][b] is the
// N x N operator <a|rho|b> on the register.
using Blocks = std::array<std::array<Matrix, 2>, 2>;

using Gate2 = std::array<std::array<Complex, 2>, 2>;

Blocks apply_probe_gate(const Blocks& rho, const Gate2& g) {
  Blocks out;
  const Index n = rho[0][0].rows();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Matrix acc = Matrix::Zero(n, n);
      for (int c = 0; c < 2; ++c) {
        for (int d = 0; d < 2; ++d) {
          const Complex coef = g[a][c] * std::conj(g[b][d]);
          if (coef != Complex(0.0, 0.0)) acc += coef * rho[c][d];
        }
      }
      out[a][b] = std::move(acc);
    }
  }
  return out;
}

Blocks apply_controlled(const Blocks& rho, const Matrix& w) {
  Blocks out = rho;
  out[0][1] = rho[0][1] * w.adjoint();
  out[1][0] = w * rho[1][0];
  out[1][1] = w * rho[1][1] * w.adjoint();
  return out;
}

double probe_zero_probability(const Blocks& rho) { return rho[0][0].trace().real(); }

}  // namespace

ProbeState::ProbeState(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw ValidationError("probe polarization must lie in (0, 1], got " + std::to_string(epsilon));
  }
}

DensityOperator ProbeState::density() const {
  Matrix rho(2, 2);
  rho << 0.5 * (1.0 + epsilon_), 0.0, 0.0, 0.5 * (1.0 - epsilon_);
  return DensityOperator(std::move(rho));
}

UnitaryMatrix build_echo_operator(const UnitaryMatrix& u, const Perturbation& p, int steps) {
  if (u.dim() != p.dim()) throw ValidationError("build_echo_operator: dimension mismatch");
  if (steps < 0) throw ValidationError("build_echo_operator: steps must be >= 0");
  const Index n = u.dim();
  const Matrix pu = p.matrix() * u.matrix();
  Matrix forward = Matrix::Identity(n, n);    // (PU)^m
  Matrix unperturbed = Matrix::Identity(n, n); // U^m
  for (int m = 0; m < steps; ++m) {
    forward = pu * forward;
    unperturbed = u.matrix() * unperturbed;
  }
  return UnitaryMatrix(Matrix(unperturbed.adjoint() * forward));
}

ReadoutProbabilities dqc1_readout_probabilities(const UnitaryMatrix& w, const ProbeState& probe) {
  const Index n = w.dim();
  const Matrix probe_rho = probe.density().matrix();
  const Matrix register_rho = Matrix::Identity(n, n) / static_cast<double>(n);
  Blocks rho;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) rho[a][b] = probe_rho(a, b) * register_rho;
  }

  const double h = 1.0 / std::numbers::sqrt2;
  const Gate2 hadamard{{{h, h}, {h, -h}}};
  rho = apply_probe_gate(rho, hadamard);
  rho = apply_controlled(rho, w.matrix());

  const double c = std::cos(std::numbers::pi / 4.0);
  const double s = std::sin(std::numbers::pi / 4.0);
  // exp(+i pi/4 Y): z readout afterwards measures sigma_x.
  const Gate2 to_x{{{c, s}, {-s, c}}};
  // exp(-i pi/4 X): z readout afterwards measures sigma_y.
  const Gate2 to_y{{{c, Complex(0.0, -s)}, {Complex(0.0, -s), c}}};
  return {probe_zero_probability(apply_probe_gate(rho, to_x)),
          probe_zero_probability(apply_probe_gate(rho, to_y))};
}

Dqc1Outcome dqc1_expectation(const UnitaryMatrix& w, const ProbeState& probe) {
  const ReadoutProbabilities p = dqc1_readout_probabilities(w, probe);
  Dqc1Outcome out;
  out.re = 2.0 * p.x0 - 1.0;
  out.im = 2.0 * p.y0 - 1.0;
  out.epsilon = probe.epsilon();
  out.shots = 0;
  return out;
}

Dqc1Outcome dqc1_sampled(const UnitaryMatrix& w, const ProbeState& probe, int shots, Rng& rng) {
  if (shots < 2) throw ValidationError("dqc1_sampled: need at least 2 shots, got " +
                                       std::to_string(shots));
  const ReadoutProbabilities p = dqc1_readout_probabilities(w, probe);
  const int shots_x = (shots + 1) / 2;
  const int shots_y = shots / 2;
  auto estimate = [&rng](double p0, int n, double& mean, double& se) {
    const double clamped = std::min(1.0, std::max(0.0, p0));
    std::binomial_distribution<int> draw(n, clamped);
    const int zeros = draw(rng);
    const double phat = static_cast<double>(zeros) / n;
    mean = 2.0 * phat - 1.0;
    se = 2.0 * std::sqrt(phat * (1.0 - phat) / n);
  };
  Dqc1Outcome out;
  out.epsilon = probe.epsilon();
  out.shots = shots;
  estimate(p.x0, shots_x, out.re, out.stderr_re);
  estimate(p.y0, shots_y, out.im, out.stderr_im);
  return out;
}

Dqc1Outcome dqc1_basis_sampled(const UnitaryMatrix& w, const ProbeState& probe, int samples,
                               Rng& rng) {
  if (samples < 2) throw ValidationError("dqc1_basis_sampled: need at least 2 samples");
  const Index n = w.dim();
  std::uniform_int_distribution<Index> pick(0, n - 1);
  // Per sample, the circuit with register |x> yields probe signal eps <x|W|x>.
  double sr = 0.0, si = 0.0, srr = 0.0, sii = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Index x = pick(rng);
    const Complex v = probe.epsilon() * w.matrix()(x, x);
    sr += v.real();
    si += v.imag();
    srr += v.real() * v.real();
    sii += v.imag() * v.imag();
  }
  const double k = static_cast<double>(samples);
  Dqc1Outcome out;
  out.epsilon = probe.epsilon();
  out.shots = samples;
  out.re = sr / k;
  out.im = si / k;
  // Unbiased sample variance divided by the sample count.
  out.stderr_re = std::sqrt(std::max(0.0, srr / k - out.re * out.re) / (k - 1.0));
  out.stderr_im = std::sqrt(std::max(0.0, sii / k - out.im * out.im) / (k - 1.0));
  return out;
}

}  // namespace fdlab
