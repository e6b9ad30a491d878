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

// Acceptance suite: one PASS/FAIL line per criterion. Every parameter and
// seed below is fixed ahead of time; thresholds are the published bounds.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "fdlab/campaign.hpp"
#include "fdlab/decoherence.hpp"
#include "fdlab/dqc1.hpp"
#include "fdlab/error.hpp"
#include "fdlab/fidelity.hpp"
#include "fdlab/maps.hpp"
#include "fdlab/parallel.hpp"
#include "fdlab/records.hpp"
#include "oracles.hpp"

using namespace fdlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int g_threads = 1;

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

Perturbation z_kick(double delta, int qubits, Axis axis = Axis::Z) {
  return build_perturbation(PerturbationSpec{delta, axis, std::nullopt, {}}, qubits);
}

std::vector<UnitaryMatrix> chaotic_maps(int count, std::uint64_t master) {
  std::vector<UnitaryMatrix> maps(static_cast<std::size_t>(count), UnitaryMatrix::identity(1));
  parallel_for(maps.size(), g_threads, [&](std::size_t i) {
    MapSpec s;
    s.qubits = 4;
    s.iterations = 4;
    s.seed = derive_seed(master, i);
    maps[i] = pseudo_random_map(s);
  });
  return maps;
}

std::vector<DecayCurve> curves_for(const std::vector<UnitaryMatrix>& maps, const Perturbation& p, int steps) {
  std::vector<DecayCurve> out(maps.size());
  parallel_for(maps.size(), g_threads, [&](std::size_t i) { out[i] = average_fidelity(maps[i], p, steps); });
  return out;
}

DecayCurve mean_curve(const std::vector<DecayCurve>& curves) {
  DecayCurve mean = curves.front();
  for (std::size_t m = 0; m < mean.size(); ++m) {
    double s = 0.0;
    for (const auto& c : curves) s += c.fidelities[m];
    mean.fidelities[m] = s / static_cast<double>(curves.size());
  }
  return mean;
}

double rms_from_reference(const std::vector<double>& f, double rate, double floor, int first, int last) {
  double ss = 0.0;
  for (int m = first; m <= last; ++m) {
    const double ref = (1.0 - floor) * std::exp(-rate * m) + floor;
    const double d = f[static_cast<std::size_t>(m)] - ref;
    ss += d * d;
  }
  return std::sqrt(ss / (last - first + 1));
}

// 1. Haar average of state fidelities equals the trace formula.
Outcome criterion_1() {
  int worst_k = 0, comparisons = 0, failures = 0;
  double worst = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const Index n = Index{1} << k;
    for (int pair = 0; pair < 5; ++pair) {
      Rng rng(derive_seed(1001, static_cast<std::uint64_t>(10 * k + pair)));
      const UnitaryMatrix u = haar_unitary(n, rng);
      const Perturbation p = Perturbation::from_generator(gue_hermitian(n, rng));
      const DecayCurve exact = average_fidelity(u, p, 10);
      const int states = 10000;
      std::vector<std::vector<double>> samples(11, std::vector<double>(states));
      for (int s = 0; s < states; ++s) {
        const std::vector<double> f = state_fidelity(u, p, haar_state(n, rng), 10);
        for (std::size_t m = 0; m <= 10; ++m) samples[m][static_cast<std::size_t>(s)] = f[m];
      }
      for (std::size_t m = 0; m <= 10; ++m) {
        const oracle::MeanSe st = oracle::mean_se(samples[m]);
        const double z = std::abs(st.mean - exact.fidelities[m]) / std::max(st.se, 1e-300);
        const bool ok = std::abs(st.mean - exact.fidelities[m]) <= std::max(3.0 * st.se, 1e-12);
        ++comparisons;
        if (!ok) ++failures;
        if (m > 0 && z > worst) {
          worst = z;
          worst_k = k;
        }
      }
    }
  }
  return {failures == 0, std::to_string(comparisons) + " step comparisons, " + std::to_string(failures) +
                             " outside 3 SE, largest |z| = " + fmt(worst, 3) + " (K=" + std::to_string(worst_k) + ")"};
}

// 2. One-clean-qubit protocol output equals eps Tr(W)/N; linear in eps.
Outcome criterion_2() {
  Rng rng(2002);
  double worst = 0.0, worst_lin = 0.0;
  std::uniform_real_distribution<double> eps_dist(0.05, 1.0);
  for (int i = 0; i < 100; ++i) {
    const UnitaryMatrix w = haar_unitary(8, rng);
    const double eps = eps_dist(rng);
    const Dqc1Outcome o = dqc1_expectation(w, ProbeState(eps));
    worst = std::max(worst, std::abs(Complex(o.re, o.im) - eps * w.trace() / 8.0));
    const Dqc1Outcome full = dqc1_expectation(w, ProbeState(1.0));
    worst_lin = std::max({worst_lin, std::abs(o.re - eps * full.re), std::abs(o.im - eps * full.im)});
  }
  return {worst <= 1e-10 && worst_lin <= 1e-12,
          "max |protocol - eps Tr W/N| = " + fmt(worst, 3) + ", max linearity error = " + fmt(worst_lin, 3)};
}

// 3. Rates for x and z perturbations agree; per-map spread is small.
Outcome criterion_3() {
  const int maps_count = 50;
  const double delta = 0.4;
  const auto maps = chaotic_maps(maps_count, 3003);
  const auto cz = curves_for(maps, z_kick(delta, 4, Axis::Z), 30);
  const auto cx = curves_for(maps, z_kick(delta, 4, Axis::X), 30);
  const StepWindow wz = default_fit_window(mean_curve(cz));
  const StepWindow wx = default_fit_window(mean_curve(cx));
  const StepWindow window{1, std::min(wz.last, wx.last)};

  auto rates = [&](const std::vector<DecayCurve>& curves, int& failed) {
    std::vector<double> out;
    for (const auto& c : curves) {
      try {
        out.push_back(fit_exponential(c, window).rate);
      } catch (const Error&) {
        ++failed;
      }
    }
    return out;
  };
  int fz = 0, fx = 0;
  const auto rz = rates(cz, fz), rx = rates(cx, fx);
  const SampleStats sz = sample_stats(rz), sx = sample_stats(rx);
  const double rel = std::abs(sx.mean - sz.mean) / (0.5 * (sx.mean + sz.mean));
  const double spread_z = sz.std_dev / sz.mean, spread_x = sx.std_dev / sx.mean;
  const bool ok = fz == 0 && fx == 0 && rel < 0.15 && spread_z < 0.25 && spread_x < 0.25;
  return {ok, "window 1.." + std::to_string(window.last) + ", mean rate z " + fmt(sz.mean) + " x " +
                  fmt(sx.mean) + ", relative difference " + fmt(rel, 3) + " (< 0.15), spread z " +
                  fmt(spread_z, 3) + " x " + fmt(spread_x, 3) + " (< 0.25), fit failures " +
                  std::to_string(fz + fx)};
}

// 4. Fitted rate scales as delta^2.
Outcome criterion_4() {
  const std::vector<double> deltas{0.1, 0.15, 0.2, 0.3};
  const auto maps = chaotic_maps(100, 4004);
  std::vector<double> lx, ly;
  std::string rates;
  for (double d : deltas) {
    const DecayCurve mean = mean_curve(curves_for(maps, z_kick(d, 4), 30));
    const double g = fit_exponential(mean, default_fit_window(mean)).rate;
    lx.push_back(std::log(d));
    ly.push_back(std::log(g));
    rates += (rates.empty() ? "" : ", ") + fmt(g, 3);
  }
  const double slope = oracle::ols_slope(lx, ly);
  return {std::abs(slope - 2.0) <= 0.3, "rates [" + rates + "], log-log slope " + fmt(slope) + " (2.0 +- 0.3)"};
}

// 5. Long-time plateau at the 1/N saturation level.
Outcome criterion_5() {
  const auto maps = chaotic_maps(200, 5005);
  const DecayCurve mean = mean_curve(curves_for(maps, z_kick(0.5, 4), 60));
  double plateau = 0.0;
  for (int m = 40; m <= 60; ++m) plateau += mean.fidelities[static_cast<std::size_t>(m)] / 21.0;
  const double ratio = plateau / saturation_level(16);
  return {std::abs(ratio - 1.0) <= 0.3, "mean over steps 40..60 = " + fmt(plateau) + " = " + fmt(ratio, 3) +
                                            " x 1/16 (within +-30%)"};
}

// 6. Regular map: P-only curve and large fluctuations about the exponential.
Outcome criterion_6() {
  const double delta = 0.4;
  const int steps = 30;
  const Perturbation p = z_kick(delta, 4);
  MapSpec regular;
  regular.kind = MapKind::Regular;
  regular.qubits = 4;
  regular.regular = RegularHamiltonianParams::defaults(4);
  const DecayCurve reg = average_fidelity(regular_map(regular), p, steps);
  double trace_err = 0.0;
  Matrix pm = Matrix::Identity(16, 16);
  for (int m = 0; m <= steps; ++m) {
    trace_err = std::max(trace_err, std::abs(reg.traces[static_cast<std::size_t>(m)] - pm.trace()));
    pm = pm * p.matrix();
  }

  const auto chaotic = curves_for(chaotic_maps(50, 6006), p, steps);
  const DecayCurve mean = mean_curve(chaotic);
  const double rate = fit_exponential(mean, default_fit_window(mean)).rate;
  const double floor = saturation_level(16);
  const double rms_regular = rms_from_reference(reg.fidelities, rate, floor, 1, steps);
  double rms_chaotic = 0.0;
  for (const auto& c : chaotic) rms_chaotic += rms_from_reference(c.fidelities, rate, floor, 1, steps) / 50.0;
  const double factor = rms_regular / rms_chaotic;
  return {trace_err <= 1e-10 && factor >= 3.0,
          "max |t_m - Tr P^m| = " + fmt(trace_err, 3) + ", RMS regular " + fmt(rms_regular) +
              " vs chaotic per-map mean " + fmt(rms_chaotic) + ", factor " + fmt(factor, 3) + " (>= 3)"};
}

// 7. Depth convergence of the first trace moment.
Outcome criterion_7() {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::Converge;
  cfg.qubits = 4;
  cfg.ensemble = 500;
  cfg.master_seed = 7007;
  cfg.depths = {1, 4, 8};
  const ConvergenceCampaign c = run_convergence_campaign(cfg, g_threads);
  const TraceMoment& r1 = c.rows[0].moment;
  const TraceMoment& r4 = c.rows[1].moment;
  const TraceMoment& r8 = c.rows[2].moment;
  const TraceMoment& haar = c.rows[3].moment;
  const double d1 = std::abs(r1.mean - 1.0), d4 = std::abs(r4.mean - 1.0);
  const bool ok = d4 * 2.0 <= d1 && std::abs(r8.mean - 1.0) <= 3 * r8.std_error &&
                  std::abs(haar.mean - 1.0) <= 3 * haar.std_error;
  return {ok, "r=1 " + fmt(r1.mean) + ", r=4 " + fmt(r4.mean) + " (deviation ratio " + fmt(d1 / d4, 3) +
                  " >= 2), r=8 " + fmt(r8.mean) + " +- " + fmt(r8.std_error, 2) + ", Haar " + fmt(haar.mean) +
                  " +- " + fmt(haar.std_error, 2)};
}

// 8. Trotter decoherence factor versus the exact partial-trace evolution.
Outcome criterion_8() {
  Rng rng(8008);
  const EnvironmentModel env = gue_environment(8, {0.0, 0.5, 1.1}, rng);
  const DensityOperator mixed = DensityOperator::maximally_mixed(8);
  const double t = 2.0;
  double err = 0.0;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      if (j == k) continue;
      const Complex exact = exact_decoherence_factor(env, mixed, j, k, t).gamma;
      err = std::max(err, std::abs(trotter_decoherence_factor(env, j, k, t, t / 2048).gamma - exact));
    }
  }
  // Commuting environment: H_E = w Z/2, B = b Z on one qubit.
  const double w = 1.7, b = 0.6;
  const Matrix z = pauli(PauliAxis::Z);
  const EnvironmentModel commuting{HermitianMatrix(0.5 * w * z), HermitianMatrix(b * z), {0.0, 0.5, 1.1}};
  double closed = 0.0;
  for (double tt : {0.5, 2.0, 5.0}) {
    for (auto [j, k] : {std::pair{1, 0}, std::pair{2, 0}, std::pair{1, 2}}) {
      const double dl = commuting.lambdas[static_cast<std::size_t>(j)] - commuting.lambdas[static_cast<std::size_t>(k)];
      const Complex g = trotter_decoherence_factor(commuting, j, k, tt, tt / 2048).gamma;
      closed = std::max(closed, std::abs(g - std::cos(dl * b * tt)));
    }
  }
  return {err <= 1e-4 && closed <= 1e-10,
          "max |trotter - exact| = " + fmt(err, 3) + " (<= 1e-4), commuting closed form error " + fmt(closed, 3)};
}

// 9. Decoherence rates scale as (lambda_j - lambda_k)^2.
Outcome criterion_9() {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::Decohere;
  cfg.ensemble = 1;
  cfg.master_seed = 9009;
  cfg.env.qubits = 4;
  const DecoherenceCampaign c = run_decoherence_campaign(cfg, g_threads);
  if (!c.errors[0].empty()) return {false, "fit failed: " + c.errors[0]};
  std::vector<double> lx, ly;
  std::string rates;
  for (const auto& e : c.scans[0]) {
    lx.push_back(std::log(std::abs(e.delta_lambda)));
    ly.push_back(std::log(e.rate));
    rates += (rates.empty() ? "" : ", ") + fmt(e.rate, 3);
  }
  const double slope = oracle::ols_slope(lx, ly);
  return {std::abs(slope - 2.0) <= 0.3,
          "N_E = 16, rates [" + rates + "], log-log slope " + fmt(slope) + " (2.0 +- 0.3)"};
}

// 10. Campaign output bytes do not depend on the worker count.
Outcome criterion_10() {
  auto text = [](const std::vector<ExperimentRecord>& r, OutputFormat f) {
    std::ostringstream s;
    write_records(r, s, f);
    return s.str();
  };
  auto scan_text = [](const std::vector<ScanRecord>& r) {
    std::ostringstream s;
    write_scan(r, s, OutputFormat::Csv);
    return s.str();
  };
  int checked = 0, identical = 0;
  auto compare = [&](const std::string& a, const std::string& b) {
    ++checked;
    if (a == b) ++identical;
  };
  ExperimentConfig decay;
  decay.ensemble = 40;
  decay.perturbation.strength = 0.3;
  decay.master_seed = 10010;
  for (OutputFormat f : {OutputFormat::Csv, OutputFormat::Json}) {
    compare(text(run_decay_campaign(decay, 1).records, f), text(run_decay_campaign(decay, 8).records, f));
  }
  ExperimentConfig dqc1 = decay;
  dqc1.experiment = ExperimentKind::Dqc1;
  dqc1.shots = 500;
  dqc1.epsilon = 0.6;
  compare(text(run_decay_campaign(dqc1, 1).records, OutputFormat::Csv),
          text(run_decay_campaign(dqc1, 8).records, OutputFormat::Csv));
  ExperimentConfig conv;
  conv.experiment = ExperimentKind::Converge;
  conv.ensemble = 100;
  compare(text(run_convergence_campaign(conv, 1).records, OutputFormat::Csv),
          text(run_convergence_campaign(conv, 8).records, OutputFormat::Csv));
  ExperimentConfig deco;
  deco.experiment = ExperimentKind::Decohere;
  deco.ensemble = 3;
  deco.env.qubits = 4;
  compare(scan_text(run_decoherence_campaign(deco, 1).records), scan_text(run_decoherence_campaign(deco, 8).records));
  return {identical == checked, std::to_string(identical) + "/" + std::to_string(checked) +
                                    " outputs byte-identical between 1 and 8 threads"};
}

}  // namespace

int main() {
  g_threads = threads_from_environment(8);
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 Haar-averaged state fidelity equals trace formula", criterion_1},
      {"2 one-clean-qubit circuit correctness", criterion_2},
      {"3 rate universality across perturbation axes", criterion_3},
      {"4 quadratic scaling of the decay rate", criterion_4},
      {"5 saturation plateau at 1/N", criterion_5},
      {"6 regular versus chaotic contrast", criterion_6},
      {"7 pseudo-random convergence", criterion_7},
      {"8 decoherence factor identity", criterion_8},
      {"9 decoherence rate scaling", criterion_9},
      {"10 determinism across thread counts", criterion_10},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
