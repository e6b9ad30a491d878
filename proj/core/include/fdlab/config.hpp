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

// Experiment configuration: a flat `key = value` file, one experiment per
// file. Lines starting with '#' are comments; list values are comma
// separated. Unknown or repeated keys are rejected.
//
//   experiment = decay            # decay | dqc1 | decohere | converge
//   qubits = 4
//   steps = 30
//   map.kind = pseudo_random      # pseudo_random | regular
//   perturbation.delta = 0.4
//   perturbation.axis = x

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fdlab/maps.hpp"
#include "fdlab/perturb.hpp"

namespace fdlab {

enum class ExperimentKind { Decay, Dqc1, Decohere, Converge };
enum class OutputFormat { Csv, Json };

ExperimentKind parse_experiment_kind(std::string_view text);
std::string_view to_string(ExperimentKind kind);
OutputFormat parse_output_format(std::string_view text);
MapKind parse_map_kind(std::string_view text);
RotationMeasure parse_rotation_measure(std::string_view text);
std::string_view to_string(MapKind kind);

/// Regular-map Hamiltonian entries; anything unset falls back to
/// RegularHamiltonianParams::defaults for the configured qubit count.
struct RegularConfig {
  std::optional<std::vector<double>> omega;     // rad/s, one per qubit
  std::optional<double> j_neighbor;             // Hz, nearest neighbours only
  std::optional<std::vector<double>> j_matrix;  // Hz, K*K row-major, symmetric
  std::optional<double> dt;                     // s

  RegularHamiltonianParams resolve(int qubits) const;
};

struct EnvironmentConfig {
  int qubits = 4;
  std::vector<double> lambdas;            // empty = {0, .4, .4 sqrt2, .8, .8 sqrt2}
  double t_max = 30.0;
  double delta = 0.02;
  std::vector<std::pair<int, int>> pairs;  // empty = (0, k) for every k > 0
  std::optional<double> skip_time;        // default: correlation time of H_E
  double level = 5.0;

  std::vector<double> resolved_lambdas() const;
  std::vector<std::pair<int, int>> resolved_pairs() const;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Decay;
  std::string id;  // empty = experiment name
  int qubits = 4;
  int steps = 30;
  MapKind map_kind = MapKind::PseudoRandom;
  int iterations = kDefaultIterations;
  RotationMeasure rotation = RotationMeasure::UniformAngle;
  RegularConfig regular;
  PerturbationSpec perturbation{0.2, Axis::Z, std::nullopt, {}};
  int ensemble = 20;
  std::uint64_t master_seed = 1;
  double epsilon = 1.0;
  int shots = 0;  // 0 = exact
  std::vector<int> depths{1, 2, 4, 8};  // converge only
  EnvironmentConfig env;                // decohere only
  std::string output_path;              // empty = standard output
  OutputFormat format = OutputFormat::Csv;

  std::string experiment_id() const;
  /// MapSpec for map `seed` with the configured kind, depth and Hamiltonian.
  MapSpec map_spec(std::uint64_t seed) const;
  void validate() const;
};

/// Parses config text; `origin` names the source in error messages.
ExperimentConfig parse_config(std::string_view text, std::string_view origin = "<config>");

/// Reads and parses a config file. Throws IoError if unreadable.
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace fdlab
