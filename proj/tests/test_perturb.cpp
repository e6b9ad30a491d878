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

#include <algorithm>

#include "fdlab/error.hpp"
#include "fdlab/maps.hpp"
#include "fdlab/perturb.hpp"
#include "oracles.hpp"

using namespace fdlab;

namespace {

PerturbationSpec spec(double delta, Axis axis = Axis::Z) {
  return PerturbationSpec{delta, axis, std::nullopt, {}};
}

std::vector<double> sorted_spectrum(const HermitianMatrix& v) {
  const RealVector e = eigh(v).values;
  std::vector<double> out(e.data(), e.data() + e.size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("build_z_perturbation examples") {
  CHECK(oracle::max_abs(build_z_perturbation(spec(0.0), 3).matrix() - Matrix::Identity(8, 8)) == 0.0);

  const double d = 0.37;
  const Matrix p1 = build_z_perturbation(spec(d), 1).matrix();
  CHECK(std::abs(p1(0, 0) - std::exp(Complex(0, -d))) < 1e-15);
  CHECK(std::abs(p1(1, 1) - std::exp(Complex(0, d))) < 1e-15);

  const std::vector<double> e = sorted_spectrum(build_z_perturbation(spec(d), 2).generator);
  CHECK(e[0] == doctest::Approx(-2 * d));
  CHECK(e[1] == doctest::Approx(0.0));
  CHECK(e[2] == doctest::Approx(0.0));
  CHECK(e[3] == doctest::Approx(2 * d));
}

TEST_CASE("weighted targets match sign enumeration") {
  PerturbationSpec s{0.2, Axis::Z, std::vector<int>{0, 2}, {1.0, -0.5}};
  const Perturbation p = build_z_perturbation(s, 3);
  const std::vector<double> diag = oracle::z_sum_diagonal({1.0, 0.0, -0.5}, 3);
  for (Index x = 0; x < 8; ++x) {
    CHECK(p.generator.matrix()(x, x).real() == doctest::Approx(0.2 * diag[static_cast<std::size_t>(x)]));
  }
}

TEST_CASE("perturbation spec validation") {
  PerturbationSpec s = spec(0.1);
  s.targets = std::vector<int>{};
  CHECK_THROWS_AS(build_perturbation(s, 2), ValidationError);
  s.targets = std::vector<int>{0, 0};
  CHECK_THROWS_AS(build_perturbation(s, 2), ValidationError);
  s.targets = std::vector<int>{2};
  CHECK_THROWS_AS(build_perturbation(s, 2), ValidationError);
  s.targets = std::vector<int>{0, 1};
  s.weights = {1.0};
  CHECK_THROWS_AS(build_perturbation(s, 2), ValidationError);
  CHECK_THROWS_AS(build_perturbation(spec(std::nan("")), 2), ValidationError);
  CHECK(parse_axis("y") == Axis::Y);
  CHECK_THROWS_AS(parse_axis("w"), ValidationError);
}

TEST_CASE("conjugate_axis examples") {
  const Perturbation pz = build_z_perturbation(spec(0.3), 2);
  CHECK(conjugate_axis(pz, Axis::Z, 2).matrix() == pz.matrix());

  const double d = 0.41;
  const Perturbation px = build_perturbation(spec(d, Axis::X), 1);
  const Matrix sx = pauli(PauliAxis::X);
  CHECK(oracle::max_abs(px.generator.matrix() - d * sx) < 1e-14);
  const Matrix expected = std::cos(d) * Matrix::Identity(2, 2) - Complex(0, std::sin(d)) * sx;
  CHECK(oracle::max_abs(px.matrix() - expected) < 1e-14);

  const Perturbation py = build_perturbation(spec(d, Axis::Y), 1);
  CHECK(oracle::max_abs(py.generator.matrix() - d * pauli(PauliAxis::Y)) < 1e-14);

  for (Axis a : {Axis::X, Axis::Y}) {
    const Perturbation c = conjugate_axis(build_z_perturbation(spec(0.25), 3), a, 3);
    const auto e1 = sorted_spectrum(c.generator), e0 = sorted_spectrum(build_z_perturbation(spec(0.25), 3).generator);
    for (std::size_t i = 0; i < e0.size(); ++i) CHECK(std::abs(e1[i] - e0[i]) < 1e-10);
  }
}

TEST_CASE("conjugation only touches the targets") {
  PerturbationSpec s{0.3, Axis::X, std::vector<int>{1}, {}};
  const Perturbation p = build_perturbation(s, 3);
  const Matrix expected = 0.3 * pauli_string({{1, PauliAxis::X}}, 3);
  CHECK(oracle::max_abs(p.generator.matrix() - expected) < 1e-14);
}

TEST_CASE("every perturbation satisfies P = exp(-iV)") {
  Rng rng(6);
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
    PerturbationSpec s{0.7, a, std::vector<int>{0, 2, 3}, {1.0, 2.0, -0.5}};
    const Perturbation p = build_perturbation(s, 4);
    CHECK(oracle::max_abs(p.matrix() - oracle::expm_minus_i(p.generator.matrix(), 1.0)) <= 1e-10);
    CHECK(eigenvalue_variance(p.generator) ==
          doctest::Approx(eigenvalue_variance(build_z_perturbation(s, 4).generator)).epsilon(1e-10));
  }
  const Perturbation g = Perturbation::from_generator(HermitianMatrix(oracle::random_hermitian(5, rng)));
  CHECK(oracle::max_abs(g.matrix() - oracle::expm_minus_i(g.generator.matrix(), 1.0)) <= 1e-10);
}

TEST_CASE("eigenvalue_variance examples") {
  CHECK(eigenvalue_variance(HermitianMatrix::zero(4)) == 0.0);
  Rng rng(2);
  const HermitianMatrix v(oracle::random_hermitian(6, rng));
  CHECK(eigenvalue_variance(v.scaled(3.0)) == doctest::Approx(9.0 * eigenvalue_variance(v)));
  for (int k = 1; k <= 5; ++k) {
    const double d = 0.2;
    CHECK(eigenvalue_variance(build_z_perturbation(spec(d), k).generator) == doctest::Approx(k * d * d));
  }
}

TEST_CASE("z perturbation commutes with the regular map") {
  MapSpec m;
  m.kind = MapKind::Regular;
  m.qubits = 4;
  m.regular = RegularHamiltonianParams::defaults(4);
  const Matrix u = regular_map(m).matrix();
  const Matrix p = build_z_perturbation(spec(0.5), 4).matrix();
  CHECK(oracle::max_abs(u * p - p * u) <= 1e-12);
}
