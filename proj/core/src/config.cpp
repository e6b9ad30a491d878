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

#include "fdlab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "fdlab/error.hpp"

namespace fdlab {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T parse_number(std::string_view text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ValidationError("invalid number '" + std::string(text) + "'");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) throw ValidationError("non-finite number '" + std::string(text) + "'");
  }
  return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view text) {
  std::vector<T> out;
  for (std::string_view part : split(text, ',')) out.push_back(parse_number<T>(part));
  return out;
}

std::vector<std::pair<int, int>> parse_pairs(std::string_view text) {
  std::vector<std::pair<int, int>> out;
  for (std::string_view part : split(text, ',')) {
    const auto items = split(part, '-');
    if (items.size() != 2) throw ValidationError("pair '" + std::string(part) + "' is not j-k");
    out.emplace_back(parse_number<int>(items[0]), parse_number<int>(items[1]));
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table{
      {"experiment", [](auto& c, auto v) { c.experiment = parse_experiment_kind(v); }},
      {"id", [](auto& c, auto v) { c.id = std::string(v); }},
      {"qubits", [](auto& c, auto v) { c.qubits = parse_number<int>(v); }},
      {"steps", [](auto& c, auto v) { c.steps = parse_number<int>(v); }},
      {"ensemble", [](auto& c, auto v) { c.ensemble = parse_number<int>(v); }},
      {"seed", [](auto& c, auto v) { c.master_seed = parse_number<std::uint64_t>(v); }},
      {"epsilon", [](auto& c, auto v) { c.epsilon = parse_number<double>(v); }},
      {"shots", [](auto& c, auto v) { c.shots = parse_number<int>(v); }},
      {"output", [](auto& c, auto v) { c.output_path = std::string(v); }},
      {"format", [](auto& c, auto v) { c.format = parse_output_format(v); }},
      {"map.kind", [](auto& c, auto v) { c.map_kind = parse_map_kind(v); }},
      {"map.rotation", [](auto& c, auto v) { c.rotation = parse_rotation_measure(v); }},
      {"map.iterations", [](auto& c, auto v) { c.iterations = parse_number<int>(v); }},
      {"regular.omega", [](auto& c, auto v) { c.regular.omega = parse_list<double>(v); }},
      {"regular.j_neighbor", [](auto& c, auto v) { c.regular.j_neighbor = parse_number<double>(v); }},
      {"regular.j_matrix", [](auto& c, auto v) { c.regular.j_matrix = parse_list<double>(v); }},
      {"regular.dt", [](auto& c, auto v) { c.regular.dt = parse_number<double>(v); }},
      {"perturbation.delta", [](auto& c, auto v) { c.perturbation.strength = parse_number<double>(v); }},
      {"perturbation.axis", [](auto& c, auto v) { c.perturbation.axis = parse_axis(v); }},
      {"perturbation.targets", [](auto& c, auto v) { c.perturbation.targets = parse_list<int>(v); }},
      {"perturbation.weights", [](auto& c, auto v) { c.perturbation.weights = parse_list<double>(v); }},
      {"converge.depths", [](auto& c, auto v) { c.depths = parse_list<int>(v); }},
      {"env.qubits", [](auto& c, auto v) { c.env.qubits = parse_number<int>(v); }},
      {"env.lambdas", [](auto& c, auto v) { c.env.lambdas = parse_list<double>(v); }},
      {"env.t_max", [](auto& c, auto v) { c.env.t_max = parse_number<double>(v); }},
      {"env.delta", [](auto& c, auto v) { c.env.delta = parse_number<double>(v); }},
      {"env.pairs", [](auto& c, auto v) { c.env.pairs = parse_pairs(v); }},
      {"env.skip_time", [](auto& c, auto v) { c.env.skip_time = parse_number<double>(v); }},
      {"env.level", [](auto& c, auto v) { c.env.level = parse_number<double>(v); }},
  };
  return table;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError("config: " + message);
}

}  // namespace

ExperimentKind parse_experiment_kind(std::string_view text) {
  if (text == "decay") return ExperimentKind::Decay;
  if (text == "dqc1") return ExperimentKind::Dqc1;
  if (text == "decohere") return ExperimentKind::Decohere;
  if (text == "converge") return ExperimentKind::Converge;
  throw ValidationError("unknown experiment '" + std::string(text) + "'");
}

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Decay: return "decay";
    case ExperimentKind::Dqc1: return "dqc1";
    case ExperimentKind::Decohere: return "decohere";
    case ExperimentKind::Converge: return "converge";
  }
  return "?";
}

OutputFormat parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw ValidationError("unknown output format '" + std::string(text) + "'");
}

MapKind parse_map_kind(std::string_view text) {
  if (text == "pseudo_random") return MapKind::PseudoRandom;
  if (text == "regular") return MapKind::Regular;
  throw ValidationError("unknown map kind '" + std::string(text) + "'");
}

RotationMeasure parse_rotation_measure(std::string_view text) {
  if (text == "uniform_angle") return RotationMeasure::UniformAngle;
  if (text == "haar") return RotationMeasure::Haar;
  throw ValidationError("unknown rotation measure '" + std::string(text) + "'");
}

std::string_view to_string(MapKind kind) {
  return kind == MapKind::Regular ? "regular" : "pseudo_random";
}

RegularHamiltonianParams RegularConfig::resolve(int qubits) const {
  RegularHamiltonianParams p = RegularHamiltonianParams::defaults(qubits);
  if (omega) p.shifts = *omega;
  if (j_neighbor && j_matrix) {
    throw ValidationError("config: regular.j_neighbor and regular.j_matrix are exclusive");
  }
  if (j_neighbor) {
    for (auto& row : p.couplings) std::fill(row.begin(), row.end(), 0.0);
    for (int q = 0; q + 1 < qubits; ++q) {
      p.couplings[static_cast<std::size_t>(q)][static_cast<std::size_t>(q + 1)] = *j_neighbor;
      p.couplings[static_cast<std::size_t>(q + 1)][static_cast<std::size_t>(q)] = *j_neighbor;
    }
  }
  if (j_matrix) {
    const auto k = static_cast<std::size_t>(qubits);
    if (j_matrix->size() != k * k) {
      throw ValidationError("config: regular.j_matrix needs qubits^2 entries");
    }
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) p.couplings[r][c] = (*j_matrix)[r * k + c];
    }
  }
  if (dt) p.dt = *dt;
  return p;
}

std::vector<double> EnvironmentConfig::resolved_lambdas() const {
  if (!lambdas.empty()) return lambdas;
  const double r2 = std::sqrt(2.0);
  return {0.0, 0.4, 0.4 * r2, 0.8, 0.8 * r2};
}

std::vector<std::pair<int, int>> EnvironmentConfig::resolved_pairs() const {
  if (!pairs.empty()) return pairs;
  std::vector<std::pair<int, int>> out;
  const int d = static_cast<int>(resolved_lambdas().size());
  for (int k = 1; k < d; ++k) out.emplace_back(0, k);
  return out;
}

std::string ExperimentConfig::experiment_id() const {
  return id.empty() ? std::string(to_string(experiment)) : id;
}

MapSpec ExperimentConfig::map_spec(std::uint64_t seed) const {
  MapSpec spec;
  spec.kind = map_kind;
  spec.qubits = qubits;
  spec.iterations = iterations;
  spec.seed = seed;
  spec.rotation = rotation;
  spec.regular = regular.resolve(qubits);
  return spec;
}

void ExperimentConfig::validate() const {
  require(qubits >= 1 && qubits <= 10, "qubits must be in [1, 10]");
  require(steps >= 1, "steps must be positive");
  require(ensemble >= 1, "ensemble must be positive");
  require(epsilon > 0.0 && epsilon <= 1.0, "epsilon must be in (0, 1]");
  require(shots == 0 || shots >= 2, "shots must be 0 (exact) or at least 2");
  require(iterations >= 1, "map.iterations must be positive");
  const std::string ident = experiment_id();
  require(ident.find_first_of(",\"\n\r") == std::string::npos,
          "id must not contain commas, quotes or newlines");
  map_spec(0).validate();
  perturbation.validate(qubits);
  if (experiment == ExperimentKind::Converge) {
    require(!depths.empty(), "converge.depths is empty");
    for (int r : depths) require(r >= 1, "converge.depths entries must be positive");
  }
  if (experiment == ExperimentKind::Decohere) {
    require(env.qubits >= 1 && env.qubits <= 8, "env.qubits must be in [1, 8]");
    require(env.t_max > 0.0 && env.delta > 0.0, "env.t_max and env.delta must be positive");
    const double ratio = env.t_max / env.delta;
    require(std::abs(ratio - std::round(ratio)) <= 1e-9 * ratio, "env.t_max/env.delta must be an integer");
    require(env.level > 0.0, "env.level must be positive");
    require(!env.skip_time || *env.skip_time >= 0.0, "env.skip_time must be non-negative");
    const int d = static_cast<int>(env.resolved_lambdas().size());
    require(d >= 2, "env.lambdas needs at least two values");
    for (const auto& [j, k] : env.resolved_pairs()) {
      require(j >= 0 && j < d && k >= 0 && k < d, "env.pairs index out of range");
    }
  }
}

ExperimentConfig parse_config(std::string_view text, std::string_view origin) {
  ExperimentConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = std::string(origin) + ":" + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ValidationError(where + "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ValidationError(where + "unknown key '" + std::string(key) + "'");
    if (!seen.insert(std::string(key)).second) {
      throw ValidationError(where + "repeated key '" + std::string(key) + "'");
    }
    if (value.empty()) throw ValidationError(where + "empty value for '" + std::string(key) + "'");
    try {
      it->second(cfg, value);
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.string());
}

}  // namespace fdlab
