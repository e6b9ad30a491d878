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

// Fidelity-decay curves, exponential rate fits and the finite-size
// saturation floor.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fdlab/maps.hpp"
#include "fdlab/perturb.hpp"
#include "fdlab/qcore.hpp"

namespace fdlab {

/// Trace and Haar-averaged fidelity at steps 0..n for one (U, P) pair.
struct DecayCurve {
  Index dim = 0;
  std::vector<int> steps;
  std::vector<Complex> traces;      // Tr{(U^m)^dagger (PU)^m}
  std::vector<double> fidelities;   // (|t_m|^2 + N)/(N^2 + N)

  std::optional<MapSpec> map;
  std::optional<PerturbationSpec> perturbation;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return steps.size(); }
};

/// (|t|^2 + N)/(N^2 + N).
double fidelity_from_trace(Complex trace, Index dim);

/// 1/N, the ensemble-average floor (|t|^2 replaced by its CUE mean 1).
double saturation_level(Index dim);

/// F_m = |<psi|(U^m)^dagger (PU)^m|psi>|^2 for m = 0..steps, propagating
/// both state vectors step by step.
std::vector<double> state_fidelity(const UnitaryMatrix& u, const Perturbation& p,
                                   const PureState& psi, int steps);

/// Echo traces and averaged fidelities for m = 0..steps. Uses the
/// recursion W_{m+1} = U^dagger W_m P U with O(N) steps when U and P are
/// both diagonal.
DecayCurve average_fidelity(const UnitaryMatrix& u, const Perturbation& p, int steps);

/// Inclusive index range into a curve.
struct StepWindow {
  std::size_t first = 0;
  std::size_t last = 0;

  std::size_t size() const noexcept { return last >= first ? last - first + 1 : 0; }
};

struct FitResult {
  double rate = 0.0;       // -slope of ln(value) per unit of x
  double intercept = 0.0;  // ln(value) at x = 0
  double residual = 0.0;   // RMS of the log-domain residuals
  StepWindow window;
};

/// Least-squares line through (x_i, ln y_i) for i in `window`. Every value in
/// the window must be positive and strictly above margin * floor; pass
/// floor = 0 to disable the floor check. Windows with fewer than two points
/// are rejected.
FitResult fit_log_linear(std::span<const double> x, std::span<const double> y, StepWindow window,
                         double floor, double margin = 2.0);

/// fit_log_linear over the curve's fidelities with floor saturation_level(N).
FitResult fit_exponential(const DecayCurve& curve, StepWindow window, double margin = 2.0);

struct WindowRule {
  std::size_t first = 1;     // skip the transient at index 0
  double level = 3.0;        // stop before value <= level * floor
  std::size_t max_last = 0;  // 0 = no cap
};

/// [rule.first, last] where `last` is the final index before `values` first
/// drops to level * floor (or the cap). Throws if fewer than two points
/// qualify.
StepWindow default_fit_window(std::span<const double> values, double floor, const WindowRule& rule);

/// Default window for a decay curve: from step 1 until F crosses three times
/// the saturation floor, capped at max(2, N/2) steps where the FGR
/// exponential regime ends for small perturbations.
StepWindow default_fit_window(const DecayCurve& curve);

}  // namespace fdlab
