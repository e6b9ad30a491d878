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

#include "fdlab/decoherence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "fdlab/error.hpp"
#include "fdlab/perturb.hpp"

namespace fdlab {
namespace {

void check_pair(const EnvironmentModel& env, int j, int k) {
  const int d = static_cast<int>(env.lambdas.size());
  if (j < 0 || j >= d || k < 0 || k >= d) {
    throw ValidationError("decoherence: eigenvalue index pair (" + std::to_string(j) + "," +
                          std::to_string(k) + ") out of range");
  }
}

int trotter_slices(double t, double delta) {
  if (!(delta > 0.0) || !(t > 0.0)) {
    throw ValidationError("decoherence: t and delta must be positive");
  }
  const double ratio = t / delta;
  const double m = std::round(ratio);
  if (m < 1.0 || std::abs(ratio - m) > 1e-9 * std::max(1.0, ratio)) {
    throw ValidationError("decoherence: t/delta = " + std::to_string(ratio) +
                          " is not a positive integer");
  }
  return static_cast<int>(m);
}

HermitianMatrix shifted(const EnvironmentModel& env, double lambda) {
  return env.self_hamiltonian + env.coupling.scaled(lambda);
}

}  // namespace

void EnvironmentModel::validate() const {
  if (self_hamiltonian.dim() != coupling.dim()) {
    throw ValidationError("environment: H_E and B differ in dimension");
  }
  if (lambdas.empty()) throw ValidationError("environment: no coupling eigenvalues");
  for (double l : lambdas) {
    if (!std::isfinite(l)) throw ValidationError("environment: non-finite coupling eigenvalue");
  }
}

EnvironmentModel gue_environment(Index dim, std::vector<double> lambdas, Rng& rng) {
  HermitianMatrix h = gue_hermitian(dim, rng);
  HermitianMatrix b = gue_hermitian(dim, rng);
  EnvironmentModel env{std::move(h), std::move(b), std::move(lambdas)};
  env.validate();
  return env;
}

std::vector<Complex> trotter_decoherence_curve(const EnvironmentModel& env, int j, int k,
                                               double delta, int steps) {
  env.validate();
  check_pair(env, j, k);
  if (!(delta > 0.0)) throw ValidationError("decoherence: delta must be positive");
  const double lj = env.lambdas[static_cast<std::size_t>(j)];
  const double lk = env.lambdas[static_cast<std::size_t>(k)];
  // One slice: U = e^{-i delta H_k}, P = e^{-i delta (l_j - l_k) B}; the
  // factor is the normalized echo trace Tr{(U^m)^dagger (PU)^m}/N.
  const UnitaryMatrix slice = matexp_hermitian(shifted(env, lk), delta);
  const Perturbation kick = Perturbation::from_generator(env.coupling.scaled(delta * (lj - lk)));
  const DecayCurve echo = average_fidelity(slice, kick, steps);
  std::vector<Complex> out(echo.traces.size());
  const double n = static_cast<double>(env.env_dim());
  std::transform(echo.traces.begin(), echo.traces.end(), out.begin(),
                 [n](Complex t) { return t / n; });
  return out;
}

DecoherenceFactor trotter_decoherence_factor(const EnvironmentModel& env, int j, int k, double t,
                                             double delta) {
  const int m = trotter_slices(t, delta);
  const std::vector<Complex> curve = trotter_decoherence_curve(env, j, k, delta, m);
  return {curve.back(), t, delta, j, k};
}

DecoherenceFactor exact_decoherence_factor(const EnvironmentModel& env,
                                           const DensityOperator& rho_env, int j, int k,
                                           double t) {
  const Index d = env.probe_dim();
  const Vector plus = Vector::Constant(d, Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0));
  return exact_decoherence_factor(env, rho_env, DensityOperator::pure(plus), j, k, t);
}

DecoherenceFactor exact_decoherence_factor(const EnvironmentModel& env,
                                           const DensityOperator& rho_env,
                                           const DensityOperator& probe_initial, int j, int k,
                                           double t) {
  env.validate();
  check_pair(env, j, k);
  const Index ne = env.env_dim();
  const Index ds = env.probe_dim();
  if (rho_env.dim() != ne) throw ValidationError("decoherence: rho_E dimension mismatch");
  if (probe_initial.dim() != ds) throw ValidationError("decoherence: probe state dimension mismatch");
  const Complex initial = probe_initial.matrix()(j, k);
  if (std::abs(initial) < 1e-14) {
    throw ValidationError("decoherence: rho_S(0)[j,k] is zero, ratio undefined");
  }

  Matrix a_s = Matrix::Zero(ds, ds);
  for (Index i = 0; i < ds; ++i) a_s(i, i) = env.lambdas[static_cast<std::size_t>(i)];
  const Matrix h = kron(Matrix::Identity(ds, ds), env.self_hamiltonian.matrix()) +
                   kron(a_s, env.coupling.matrix());
  const UnitaryMatrix evo = matexp_hermitian(HermitianMatrix(h), t);
  const Matrix rho0 = kron(probe_initial.matrix(), rho_env.matrix());
  const Matrix rho_t = evo.matrix() * rho0 * evo.matrix().adjoint();
  const std::array<Index, 2> dims{ds, ne};
  const Matrix probe_t = partial_trace(rho_t, 0, dims);
  return {probe_t(j, k) / initial, t, 0.0, j, k};
}

double correlation_time(const HermitianMatrix& h) {
  const double second_moment = (h.matrix() * h.matrix()).trace().real() / static_cast<double>(h.dim());
  return second_moment > 0.0 ? 1.0 / std::sqrt(second_moment) : 0.0;
}

std::vector<RateScanEntry> decoherence_rate_scan(const EnvironmentModel& env,
                                                 std::span<const std::pair<int, int>> pairs,
                                                 const RateScanOptions& options) {
  env.validate();
  const int steps = trotter_slices(options.t_max, options.delta);
  const double floor = 1.0 / static_cast<double>(env.env_dim());
  const double skip = options.skip_time.value_or(correlation_time(env.self_hamiltonian));

  std::vector<double> times(static_cast<std::size_t>(steps) + 1);
  for (std::size_t m = 0; m < times.size(); ++m) times[m] = static_cast<double>(m) * options.delta;

  WindowRule rule;
  rule.first = static_cast<std::size_t>(std::max(1.0, std::ceil(skip / options.delta - 1e-9)));
  rule.level = options.level;

  std::map<std::pair<int, int>, RateScanEntry> cache;
  std::vector<RateScanEntry> out;
  out.reserve(pairs.size());
  for (const auto& [j, k] : pairs) {
    check_pair(env, j, k);
    const double dl = env.lambdas[static_cast<std::size_t>(j)] - env.lambdas[static_cast<std::size_t>(k)];
    RateScanEntry entry{j, k, dl, 0.0, 0.0, {}};
    if (dl == 0.0) {
      out.push_back(entry);
      continue;
    }
    const std::pair<int, int> key{std::min(j, k), std::max(j, k)};
    auto it = cache.find(key);
    if (it == cache.end()) {
      try {
        const std::vector<Complex> gamma =
            trotter_decoherence_curve(env, key.first, key.second, options.delta, steps);
        std::vector<double> magnitude(gamma.size());
        std::transform(gamma.begin(), gamma.end(), magnitude.begin(),
                       [](Complex g) { return std::abs(g); });
        const StepWindow window = default_fit_window(magnitude, floor, rule);
        const FitResult fit = fit_log_linear(times, magnitude, window, floor, options.margin);
        RateScanEntry computed{key.first, key.second, 0.0, fit.rate, fit.residual, fit.window};
        it = cache.emplace(key, computed).first;
      } catch (const ValidationError& e) {
        throw ValidationError("rate scan pair (" + std::to_string(j) + "," + std::to_string(k) +
                              "): " + e.what());
      }
    }
    entry.rate = it->second.rate;
    entry.residual = it->second.residual;
    entry.window = it->second.window;
    out.push_back(entry);
  }
  return out;
}

}  // namespace fdlab
