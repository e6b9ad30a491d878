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

#include "fdlab/campaign.hpp"

#include <cmath>
#include <limits>

#include "fdlab/dqc1.hpp"
#include "fdlab/error.hpp"
#include "fdlab/parallel.hpp"

namespace fdlab {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kShotStream = 0x5d0c51ULL;
constexpr std::uint64_t kHaarStream = 0x4841415248414152ULL;

struct StepEstimate {
  Complex trace;
  double fidelity_stderr = 0.0;
};

// Standard error of F = (|t|^2 + N)/(N^2 + N) with t = N (re + i im)/eps,
// propagated linearly from the readout standard errors.
double fidelity_stderr(const Dqc1Outcome& o, double n) {
  const double scale = 2.0 * n * n / (o.epsilon * o.epsilon * (n * n + n));
  return scale * std::hypot(o.re * o.stderr_re, o.im * o.stderr_im);
}

DecayCurve dqc1_curve(const UnitaryMatrix& u, const Perturbation& p, int steps,
                      const ProbeState& probe, int shots, Rng& rng,
                      std::vector<double>& stderrs) {
  const Index n = u.dim();
  DecayCurve curve;
  curve.dim = n;
  Matrix free = Matrix::Identity(n, n);
  Matrix kicked = Matrix::Identity(n, n);
  const Matrix pu = p.matrix() * u.matrix();
  for (int m = 0; m <= steps; ++m) {
    if (m > 0) {
      free = u.matrix() * free;
      kicked = pu * kicked;
    }
    const UnitaryMatrix w(Matrix(free.adjoint() * kicked));
    const Dqc1Outcome o = shots > 0 ? dqc1_sampled(w, probe, shots, rng) : dqc1_expectation(w, probe);
    const Complex t = static_cast<double>(n) * o.normalized_trace();
    curve.steps.push_back(m);
    curve.traces.push_back(t);
    curve.fidelities.push_back(fidelity_from_trace(t, n));
    stderrs.push_back(fidelity_stderr(o, static_cast<double>(n)));
  }
  return curve;
}

}  // namespace

SampleStats sample_stats(std::span<const double> values) {
  SampleStats s;
  s.count = values.size();
  if (values.empty()) {
    s.mean = kNaN;
    s.std_dev = kNaN;
    return s;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) {
    s.std_dev = kNaN;
    return s;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.std_dev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return s;
}

DecayCampaign run_decay_campaign(const ExperimentConfig& cfg, int threads) {
  cfg.validate();
  if (cfg.experiment != ExperimentKind::Decay && cfg.experiment != ExperimentKind::Dqc1) {
    throw ValidationError("decay campaign needs experiment = decay or dqc1");
  }
  const auto maps = static_cast<std::size_t>(cfg.ensemble);
  const Perturbation p = build_perturbation(cfg.perturbation, cfg.qubits);
  const bool via_dqc1 = cfg.experiment == ExperimentKind::Dqc1 || cfg.shots > 0;
  const ProbeState probe(cfg.epsilon);

  DecayCampaign out;
  out.curves.resize(maps);
  out.fits.resize(maps);
  std::vector<std::vector<double>> stderrs(maps);

  parallel_for(maps, threads, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(cfg.master_seed, i);
    const MapSpec spec = cfg.map_spec(seed);
    const UnitaryMatrix u = build_map(spec);
    DecayCurve curve;
    if (via_dqc1) {
      Rng rng(derive_seed(seed, kShotStream));
      curve = dqc1_curve(u, p, cfg.steps, probe, cfg.shots, rng, stderrs[i]);
    } else {
      curve = average_fidelity(u, p, cfg.steps);
      stderrs[i].assign(curve.size(), 0.0);
    }
    curve.map = spec;
    curve.perturbation = cfg.perturbation;
    curve.seed = seed;

    MapFit& fit = out.fits[i];
    fit.index = i;
    fit.seed = seed;
    try {
      fit.fit = fit_exponential(curve, default_fit_window(curve));
    } catch (const Error& e) {
      fit.error = e.what();
    }
    out.curves[i] = std::move(curve);
  });

  const auto steps = static_cast<std::size_t>(cfg.steps) + 1;
  const std::string id = cfg.experiment_id();
  const double n = static_cast<double>(Index{1} << cfg.qubits);
  out.mean.resize(steps);
  out.std_dev.resize(steps);
  std::vector<double> column(maps);
  for (std::size_t m = 0; m < steps; ++m) {
    for (std::size_t i = 0; i < maps; ++i) column[i] = out.curves[i].fidelities[m];
    const SampleStats s = sample_stats(column);
    out.mean[m] = s.mean;
    out.std_dev[m] = s.std_dev;
  }

  for (std::size_t i = 0; i < maps; ++i) {
    const DecayCurve& c = out.curves[i];
    for (std::size_t m = 0; m < steps; ++m) {
      out.records.push_back({id, c.seed, c.steps[m], c.traces[m].real(), c.traces[m].imag(),
                             c.fidelities[m], kNaN, kNaN, cfg.shots, stderrs[i][m]});
    }
  }
  for (std::size_t m = 0; m < steps; ++m) {
    const double se = out.std_dev[m] / std::sqrt(static_cast<double>(maps));
    out.records.push_back({id + "/aggregate", cfg.master_seed, static_cast<int>(m), kNaN, kNaN,
                           out.mean[m], out.mean[m], out.std_dev[m], cfg.shots, se});
  }

  try {
    const WindowRule rule{1, 3.0, std::max<std::size_t>(2, static_cast<std::size_t>(n) / 2)};
    const double floor = saturation_level(static_cast<Index>(n));
    std::vector<double> x(steps);
    for (std::size_t m = 0; m < steps; ++m) x[m] = static_cast<double>(m);
    out.mean_fit = fit_log_linear(x, out.mean, default_fit_window(out.mean, floor, rule), floor);
  } catch (const Error& e) {
    out.mean_fit_error = e.what();
  }
  return out;
}

ConvergenceCampaign run_convergence_campaign(const ExperimentConfig& cfg, int threads) {
  cfg.validate();
  ConvergenceCampaign out;
  const std::string id = cfg.experiment_id();
  auto add = [&](int depth, const TraceMoment& t, const std::string& row_id) {
    out.rows.push_back({depth, t});
    out.records.push_back({row_id, cfg.master_seed, depth, kNaN, kNaN, kNaN, t.mean, t.std_dev,
                           t.samples, t.std_error});
  };
  for (int r : cfg.depths) {
    const std::uint64_t master = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(r));
    add(r, ensemble_trace_moment(cfg.qubits, r, cfg.ensemble, master, threads, cfg.rotation), id);
  }
  const Index dim = Index{1} << cfg.qubits;
  add(0, haar_trace_moment(dim, cfg.ensemble, derive_seed(cfg.master_seed, kHaarStream), threads),
      id + "/haar");
  return out;
}

DecoherenceCampaign run_decoherence_campaign(const ExperimentConfig& cfg, int threads) {
  cfg.validate();
  const auto envs = static_cast<std::size_t>(cfg.ensemble);
  const std::vector<double> lambdas = cfg.env.resolved_lambdas();
  const std::vector<std::pair<int, int>> pairs = cfg.env.resolved_pairs();
  RateScanOptions opts;
  opts.t_max = cfg.env.t_max;
  opts.delta = cfg.env.delta;
  opts.level = cfg.env.level;
  opts.skip_time = cfg.env.skip_time;

  DecoherenceCampaign out;
  out.scans.resize(envs);
  out.errors.resize(envs);
  parallel_for(envs, threads, [&](std::size_t i) {
    Rng rng(derive_seed(cfg.master_seed, i));
    const EnvironmentModel env = gue_environment(Index{1} << cfg.env.qubits, lambdas, rng);
    try {
      out.scans[i] = decoherence_rate_scan(env, pairs, opts);
    } catch (const Error& e) {
      out.errors[i] = e.what();
    }
  });

  const std::string id = cfg.experiment_id();
  for (std::size_t i = 0; i < envs; ++i) {
    const std::string row_id = id + "/" + std::to_string(i);
    if (!out.errors[i].empty()) {
      for (const auto& [j, k] : pairs) {
        const double dl = lambdas[static_cast<std::size_t>(j)] - lambdas[static_cast<std::size_t>(k)];
        out.records.push_back({row_id, dl, kNaN, kNaN});
      }
      continue;
    }
    for (const RateScanEntry& e : out.scans[i]) {
      out.records.push_back({row_id, e.delta_lambda, e.rate, e.residual});
    }
  }
  return out;
}

}  // namespace fdlab
