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

#include <doctest.h>

#include <array>

#include "fdlab/decoherence.hpp"
#include "fdlab/dqc1.hpp"
#include "fdlab/error.hpp"
#include "oracles.hpp"

using namespace fdlab;

namespace {

EnvironmentModel random_env(int qubits, std::vector<double> lambdas, std::uint64_t seed) {
  Rng rng(seed);
  return gue_environment(Index{1} << qubits, std::move(lambdas), rng);
}

// Direct exact factor (1/N) Tr(e^{i H_k t} e^{-i H_j t}) for rho_E = I/N,
// through the series exponential.
Complex direct_factor(const EnvironmentModel& env, int j, int k, double t) {
  const Matrix hj = env.self_hamiltonian.matrix() + env.lambdas[static_cast<std::size_t>(j)] * env.coupling.matrix();
  const Matrix hk = env.self_hamiltonian.matrix() + env.lambdas[static_cast<std::size_t>(k)] * env.coupling.matrix();
  return (oracle::expm_minus_i(hk, -t) * oracle::expm_minus_i(hj, t)).trace() / static_cast<double>(env.env_dim());
}

}  // namespace

TEST_CASE("trotter factor trivial cases") {
  const EnvironmentModel env = random_env(2, {0.0, 0.5, 0.5}, 1);
  CHECK(std::abs(trotter_decoherence_factor(env, 1, 2, 2.0, 0.1).gamma - 1.0) < 1e-12);
  EnvironmentModel decoupled{env.self_hamiltonian, HermitianMatrix::zero(4), {0.0, 1.0}};
  CHECK(std::abs(trotter_decoherence_factor(decoupled, 0, 1, 2.0, 0.1).gamma - 1.0) < 1e-12);
  CHECK_THROWS_AS(trotter_decoherence_factor(env, 0, 1, 1.0, 0.3), ValidationError);
  CHECK_THROWS_AS(trotter_decoherence_factor(env, 0, 5, 1.0, 0.1), ValidationError);
}

TEST_CASE("commuting closed form") {
  const double w = 1.3, b = 0.7;
  const Matrix sz = pauli(PauliAxis::Z);
  EnvironmentModel env{HermitianMatrix(w / 2 * sz), HermitianMatrix(b * sz), {0.0, 0.4, 1.1}};
  for (double t : {0.5, 1.0, 3.7}) {
    for (auto [j, k] : std::array<std::pair<int, int>, 3>{{{0, 1}, {1, 2}, {2, 0}}}) {
      const double dl = env.lambdas[static_cast<std::size_t>(j)] - env.lambdas[static_cast<std::size_t>(k)];
      const Complex g = trotter_decoherence_factor(env, j, k, t, t / 64).gamma;
      CHECK(std::abs(g - std::cos(dl * b * t)) < 1e-10);
    }
  }
}

TEST_CASE("exact factor examples") {
  const EnvironmentModel env = random_env(2, {0.0, 0.3, 0.3, 0.9}, 2);
  const DensityOperator mixed = DensityOperator::maximally_mixed(4);
  CHECK(std::abs(exact_decoherence_factor(env, mixed, 0, 3, 0.0).gamma - 1.0) < 1e-12);
  Rng rng(3);
  const DensityOperator pure = DensityOperator::pure(haar_state(4, rng).amplitudes());
  for (double t : {0.4, 2.0, 7.5}) CHECK(std::abs(std::abs(exact_decoherence_factor(env, pure, 1, 2, t).gamma) - 1.0) < 1e-10);

  const DensityOperator probe0 = DensityOperator::pure(PureState::basis(4, 0).amplitudes());
  CHECK_THROWS_AS(exact_decoherence_factor(env, mixed, probe0, 0, 1, 1.0), ValidationError);
  CHECK_THROWS_AS(exact_decoherence_factor(env, DensityOperator::maximally_mixed(2), 0, 1, 1.0), ValidationError);
}

TEST_CASE("exact factor equals the normalized trace for a mixed environment") {
  const EnvironmentModel env = random_env(3, {0.0, 0.5, 1.2}, 4);
  const DensityOperator mixed = DensityOperator::maximally_mixed(8);
  for (double t : {0.3, 1.7}) {
    for (auto [j, k] : std::array<std::pair<int, int>, 2>{{{0, 2}, {2, 1}}}) {
      CHECK(std::abs(exact_decoherence_factor(env, mixed, j, k, t).gamma - direct_factor(env, j, k, t)) < 1e-10);
    }
  }
}

TEST_CASE("trotter factor equals the echo trace with per-slice U and P") {
  const EnvironmentModel env = random_env(3, {0.0, 0.5, 1.2}, 5);
  const double delta = 0.05;
  const int m = 40;
  const int j = 2, k = 0;
  const double lj = env.lambdas[j], lk = env.lambdas[k];
  const UnitaryMatrix u(oracle::expm_minus_i((env.self_hamiltonian.matrix() + lk * env.coupling.matrix()).eval(), delta));
  const Perturbation p = Perturbation::from_generator(env.coupling.scaled(delta * (lj - lk)));
  const Complex echo = build_echo_operator(u, p, m).trace() / 8.0;
  CHECK(std::abs(trotter_decoherence_factor(env, j, k, m * delta, delta).gamma - echo) < 1e-10);
}

TEST_CASE("trotter converges to the exact factor at first order") {
  const EnvironmentModel env = random_env(3, {0.0, 0.6, 1.0}, 6);
  const DensityOperator mixed = DensityOperator::maximally_mixed(8);
  const double t = 2.0;
  const Complex exact = exact_decoherence_factor(env, mixed, 2, 0, t).gamma;
  double previous = 0.0;
  for (double delta : {t / 64, t / 128, t / 256, t / 512}) {
    const double err = std::abs(trotter_decoherence_factor(env, 2, 0, t, delta).gamma - exact);
    if (previous > 0.0) CHECK(err <= 0.6 * previous);
    previous = err;
  }
  CHECK(std::abs(trotter_decoherence_factor(env, 2, 0, t, t / 2048).gamma - exact) < 1e-4);
}

TEST_CASE("decoherence curve bounded and consistent with single factors") {
  const EnvironmentModel env = random_env(3, {0.0, 0.8}, 7);
  const auto curve = trotter_decoherence_curve(env, 1, 0, 0.1, 50);
  CHECK(curve.size() == 51);
  CHECK(std::abs(curve[0] - 1.0) < 1e-14);
  for (const Complex g : curve) CHECK(std::abs(g) <= 1.0 + 1e-9);
  CHECK(std::abs(curve[30] - trotter_decoherence_factor(env, 1, 0, 3.0, 0.1).gamma) < 1e-12);
}

TEST_CASE("rate scan examples") {
  const EnvironmentModel env = random_env(4, {0.0, 0.0, 0.5, 0.5 * std::sqrt(2.0), 1.0}, 8);
  const std::vector<std::pair<int, int>> pairs{{0, 1}, {0, 2}, {2, 0}, {0, 3}, {0, 4}};
  RateScanOptions opts;
  opts.t_max = 40.0;
  opts.delta = 0.02;
  const auto scan = decoherence_rate_scan(env, pairs, opts);
  REQUIRE(scan.size() == pairs.size());
  CHECK(scan[0].rate == 0.0);
  CHECK(scan[0].delta_lambda == 0.0);
  CHECK(std::abs(scan[1].rate - scan[2].rate) <= 1e-10);
  CHECK(scan[2].delta_lambda == doctest::Approx(0.5));
  std::vector<double> lx, ly;
  for (std::size_t i : {1u, 3u, 4u}) {
    CHECK(scan[i].rate > 0.0);
    lx.push_back(std::log(std::abs(scan[i].delta_lambda)));
    ly.push_back(std::log(scan[i].rate));
  }
  // Doubling the splitting multiplies the rate by about four.
  MESSAGE("rate ratio " << scan[4].rate / scan[1].rate << ", slope " << oracle::ols_slope(lx, ly));
  CHECK(oracle::ols_slope(lx, ly) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("rate scan failures name the pair") {
  const EnvironmentModel env = random_env(3, {0.0, 3.0}, 9);
  const std::vector<std::pair<int, int>> pairs{{0, 1}};
  RateScanOptions opts;
  opts.t_max = 2.0;
  opts.delta = 0.5;
  opts.skip_time = 0.0;
  try {
    decoherence_rate_scan(env, pairs, opts);
    FAIL("expected a fit failure");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("(0,1)") != std::string::npos);
  }
}
