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

#include "fdlab/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "fdlab/error.hpp"

namespace fdlab {
namespace {

bool is_diagonal(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (i != j && m(i, j) != Complex(0.0, 0.0)) return false;
    }
  }
  return true;
}

void require_same_dim(Index a, Index b, const char* what) {
  if (a != b) {
    throw ValidationError(std::string(what) + ": dimension mismatch " + std::to_string(a) +
                          " vs " + std::to_string(b));
  }
}

}  // namespace

double fidelity_from_trace(Complex trace, Index dim) {
  const double n = static_cast<double>(dim);
  return (std::norm(trace) + n) / (n * n + n);
}

double saturation_level(Index dim) {
  if (dim < 2) throw ValidationError("saturation_level: dimension must be >= 2");
  const double n = static_cast<double>(dim);
  return (1.0 + n) / (n * n + n);
}

std::vector<double> state_fidelity(const UnitaryMatrix& u, const Perturbation& p,
                                   const PureState& psi, int steps) {
  require_same_dim(u.dim(), p.dim(), "state_fidelity");
  require_same_dim(u.dim(), psi.dim(), "state_fidelity");
  if (steps < 0) throw ValidationError("state_fidelity: steps must be >= 0");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  Vector plain = psi.amplitudes();
  Vector perturbed = psi.amplitudes();
  const Matrix pu = p.matrix() * u.matrix();
  for (int m = 0; m <= steps; ++m) {
    out.push_back(std::norm(plain.dot(perturbed)));
    plain = u.matrix() * plain;
    perturbed = pu * perturbed;
  }
  return out;
}

DecayCurve average_fidelity(const UnitaryMatrix& u, const Perturbation& p, int steps) {
  require_same_dim(u.dim(), p.dim(), "average_fidelity");
  if (steps < 0) throw ValidationError("average_fidelity: steps must be >= 0");
  const Index n = u.dim();
  DecayCurve curve;
  curve.dim = n;
  curve.perturbation = p.spec;
  curve.steps.reserve(static_cast<std::size_t>(steps) + 1);
  curve.traces.reserve(static_cast<std::size_t>(steps) + 1);
  curve.fidelities.reserve(static_cast<std::size_t>(steps) + 1);
  auto record = [&](int m, Complex t) {
    curve.steps.push_back(m);
    curve.traces.push_back(t);
    curve.fidelities.push_back(fidelity_from_trace(t, n));
  };

  const bool u_diag = is_diagonal(u.matrix());
  const bool p_diag = is_diagonal(p.matrix());
  if (u_diag && p_diag) {
    // W_m = P^m, U cancels exactly.
    const Vector pd = p.matrix().diagonal();
    Vector w = Vector::Ones(n);
    for (int m = 0; m <= steps; ++m) {
      record(m, w.sum());
      w = w.cwiseProduct(pd);
    }
    return curve;
  }

  const Matrix& um = u.matrix();
  const Matrix ua = um.adjoint();
  Matrix w = Matrix::Identity(n, n);
  Matrix tmp(n, n);
  for (int m = 0; m <= steps; ++m) {
    record(m, w.trace());
    if (m == steps) break;
    if (p_diag) {
      tmp.noalias() = w * p.matrix().diagonal().asDiagonal();
    } else {
      tmp.noalias() = w * p.matrix();
    }
    w.noalias() = tmp * um;
    tmp.noalias() = ua * w;
    w.swap(tmp);
  }
  return curve;
}

FitResult fit_log_linear(std::span<const double> x, std::span<const double> y, StepWindow window,
                         double floor, double margin) {
  if (x.size() != y.size()) throw ValidationError("fit: x and y differ in length");
  if (window.size() < 2 || window.last >= y.size()) {
    throw ValidationError("fit: window [" + std::to_string(window.first) + ", " +
                          std::to_string(window.last) + "] needs at least two points inside a " +
                          std::to_string(y.size()) + "-point curve");
  }
  const double threshold = margin * floor;
  for (std::size_t i = window.first; i <= window.last; ++i) {
    if (!(y[i] > 0.0)) {
      throw ValidationError("fit: non-positive value " + std::to_string(y[i]) + " at index " +
                            std::to_string(i));
    }
    if (floor > 0.0 && !(y[i] > threshold)) {
      std::ostringstream msg;
      msg << "fit: value " << y[i] << " at index " << i << " is not above " << margin
          << " x saturation floor " << floor;
      throw ValidationError(msg.str());
    }
  }
  const double count = static_cast<double>(window.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = window.first; i <= window.last; ++i) {
    sx += x[i];
    sy += std::log(y[i]);
  }
  const double mx = sx / count;
  const double my = sy / count;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = window.first; i <= window.last; ++i) {
    const double dx = x[i] - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  if (!(sxx > 0.0)) throw ValidationError("fit: window has no spread in x");
  const double slope = sxy / sxx;
  FitResult out;
  out.rate = -slope;
  out.intercept = my - slope * mx;
  double ss = 0.0;
  for (std::size_t i = window.first; i <= window.last; ++i) {
    const double r = std::log(y[i]) - (out.intercept + slope * x[i]);
    ss += r * r;
  }
  out.residual = std::sqrt(ss / count);
  out.window = window;
  return out;
}

FitResult fit_exponential(const DecayCurve& curve, StepWindow window, double margin) {
  std::vector<double> x(curve.steps.begin(), curve.steps.end());
  return fit_log_linear(x, curve.fidelities, window, saturation_level(curve.dim), margin);
}

StepWindow default_fit_window(std::span<const double> values, double floor, const WindowRule& rule) {
  const double threshold = rule.level * floor;
  std::size_t last = rule.first;
  bool any = false;
  for (std::size_t i = rule.first; i < values.size(); ++i) {
    if (rule.max_last != 0 && i > rule.max_last) break;
    if (!(values[i] > threshold)) break;
    last = i;
    any = true;
  }
  if (!any || last < rule.first + 1) {
    throw ValidationError("fit window: fewer than two points above " + std::to_string(rule.level) +
                          " x floor starting at index " + std::to_string(rule.first));
  }
  return {rule.first, last};
}

StepWindow default_fit_window(const DecayCurve& curve) {
  WindowRule rule;
  rule.max_last = std::max<std::size_t>(2, static_cast<std::size_t>(curve.dim / 2));
  return default_fit_window(curve.fidelities, saturation_level(curve.dim), rule);
}

}  // namespace fdlab
