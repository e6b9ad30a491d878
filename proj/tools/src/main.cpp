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

// fdlab command-line front end: one subcommand per experiment, a config
// file plus flag overrides, records to a file or standard output.

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "fdlab/campaign.hpp"
#include "fdlab/config.hpp"
#include "fdlab/error.hpp"
#include "fdlab/parallel.hpp"
#include "fdlab/records.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct Overrides {
  std::string config;
  std::optional<int> qubits, steps, iterations, ensemble, shots;
  std::optional<double> delta, epsilon;
  std::optional<std::string> axis, output, format;
  std::optional<std::uint64_t> seed;
};

void add_common_flags(CLI::App& sub, Overrides& o) {
  sub.add_option("--config", o.config, "experiment config file (key = value)");
  sub.add_option("--qubits", o.qubits, "system qubits K");
  sub.add_option("--steps", o.steps, "largest step n_max");
  sub.add_option("--iterations", o.iterations, "pseudo-random map depth r");
  sub.add_option("--delta", o.delta, "perturbation strength");
  sub.add_option("--axis", o.axis, "perturbation axis")->check(CLI::IsMember({"x", "y", "z"}));
  sub.add_option("--ensemble", o.ensemble, "number of maps, samples or environments M");
  sub.add_option("--seed", o.seed, "master seed");
  sub.add_option("--shots", o.shots, "readout shots per step (0 = exact)");
  sub.add_option("--epsilon", o.epsilon, "probe polarization");
  sub.add_option("--output", o.output, "output path (default: standard output)");
  sub.add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
}

fdlab::ExperimentConfig resolve(const Overrides& o, fdlab::ExperimentKind kind) {
  fdlab::ExperimentConfig cfg;
  if (!o.config.empty()) {
    cfg = fdlab::load_config(o.config);
    if (cfg.experiment != kind) {
      throw fdlab::ValidationError("config '" + o.config + "' is for experiment '" +
                                   std::string(fdlab::to_string(cfg.experiment)) + "'");
    }
  }
  cfg.experiment = kind;
  if (o.qubits) cfg.qubits = *o.qubits;
  if (o.steps) cfg.steps = *o.steps;
  if (o.iterations) cfg.iterations = *o.iterations;
  if (o.delta) cfg.perturbation.strength = *o.delta;
  if (o.axis) cfg.perturbation.axis = fdlab::parse_axis(*o.axis);
  if (o.ensemble) cfg.ensemble = *o.ensemble;
  if (o.seed) cfg.master_seed = *o.seed;
  if (o.shots) cfg.shots = *o.shots;
  if (o.epsilon) cfg.epsilon = *o.epsilon;
  if (o.output) cfg.output_path = *o.output;
  if (o.format) cfg.format = fdlab::parse_output_format(*o.format);
  cfg.validate();
  return cfg;
}

template <typename Rows, typename Writer>
void emit(const fdlab::ExperimentConfig& cfg, const Rows& rows, Writer write) {
  if (cfg.output_path.empty() || cfg.output_path == "-") {
    write(rows, std::cout, cfg.format);
    std::cout.flush();
    if (!std::cout) throw fdlab::IoError("write to standard output failed");
  } else {
    write(rows, std::filesystem::path(cfg.output_path), cfg.format);
  }
}

void run(const fdlab::ExperimentConfig& cfg) {
  const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const int threads = fdlab::threads_from_environment(hw);
  using fdlab::ExperimentKind;
  switch (cfg.experiment) {
    case ExperimentKind::Decay:
    case ExperimentKind::Dqc1: {
      const fdlab::DecayCampaign c = fdlab::run_decay_campaign(cfg, threads);
      emit(cfg, c.records, [](const auto& r, auto&& dst, auto f) { fdlab::write_records(r, dst, f); });
      const auto failed = std::count_if(c.fits.begin(), c.fits.end(), [](const auto& f) { return !f.fit; });
      if (c.mean_fit) {
        std::cerr << "ensemble decay rate " << c.mean_fit->rate << " per step (window "
                  << c.mean_fit->window.first << ".." << c.mean_fit->window.last << ")";
      } else {
        std::cerr << "ensemble fit failed: " << c.mean_fit_error;
      }
      std::cerr << "; per-map fit failures " << failed << "/" << c.fits.size() << '\n';
      break;
    }
    case ExperimentKind::Converge: {
      const fdlab::ConvergenceCampaign c = fdlab::run_convergence_campaign(cfg, threads);
      emit(cfg, c.records, [](const auto& r, auto&& dst, auto f) { fdlab::write_records(r, dst, f); });
      break;
    }
    case ExperimentKind::Decohere: {
      const fdlab::DecoherenceCampaign c = fdlab::run_decoherence_campaign(cfg, threads);
      emit(cfg, c.records, [](const auto& r, auto&& dst, auto f) { fdlab::write_scan(r, dst, f); });
      for (std::size_t i = 0; i < c.errors.size(); ++i) {
        if (!c.errors[i].empty()) std::cerr << "environment " << i << ": " << c.errors[i] << '\n';
      }
      break;
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fdlab: fidelity decay and decoherence experiments"};
  app.require_subcommand(1);
  struct Sub {
    const char* name;
    const char* help;
    fdlab::ExperimentKind kind;
  };
  const Sub subs[] = {
      {"decay", "ensemble fidelity decay", fdlab::ExperimentKind::Decay},
      {"dqc1", "fidelity decay measured through the one-clean-qubit protocol", fdlab::ExperimentKind::Dqc1},
      {"decohere", "decoherence rate scan in a GUE environment", fdlab::ExperimentKind::Decohere},
      {"converge", "pseudo-random map convergence to the Haar measure", fdlab::ExperimentKind::Converge},
  };
  Overrides overrides;
  std::optional<fdlab::ExperimentKind> chosen;
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common_flags(*sub, overrides);
    const fdlab::ExperimentKind kind = s.kind;
    sub->callback([&chosen, kind] { chosen = kind; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    run(resolve(overrides, *chosen));
  } catch (const fdlab::ValidationError& e) {
    std::cerr << "fdlab: " << e.what() << '\n';
    return kExitValidation;
  } catch (const fdlab::IoError& e) {
    std::cerr << "fdlab: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "fdlab: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
