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

// Seeded ensemble campaigns. Map i of a campaign is seeded with
// derive_seed(master_seed, i), work is spread over map indices and results
// are emitted in index order, so the output does not depend on the number
// of worker threads.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fdlab/config.hpp"
#include "fdlab/decoherence.hpp"
#include "fdlab/fidelity.hpp"
#include "fdlab/maps.hpp"
#include "fdlab/records.hpp"

namespace fdlab {

struct SampleStats {
  double mean = 0.0;
  double std_dev = 0.0;  // unbiased; NaN for fewer than two samples
  std::size_t count = 0;
};

SampleStats sample_stats(std::span<const double> values);

struct MapFit {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::optional<FitResult> fit;
  std::string error;  // set when the fit failed
};

struct DecayCampaign {
  std::vector<DecayCurve> curves;   // one per map, index order
  std::vector<double> mean;         // per step, across maps
  std::vector<double> std_dev;      // per step, unbiased
  std::vector<MapFit> fits;         // per-map exponential fits
  std::optional<FitResult> mean_fit;
  std::string mean_fit_error;
  std::vector<ExperimentRecord> records;
};

/// Builds M maps and the configured perturbation and records the fidelity
/// decay of each. Traces are exact for `decay` with shots = 0; otherwise
/// they go through the one-clean-qubit protocol (exact expectation for
/// shots = 0, binomial sampling otherwise). Per-map rows report the shot
/// noise standard error of the fidelity; aggregate rows
/// (id "<id>/aggregate") report the across-map mean, unbiased standard
/// deviation and std/sqrt(M).
DecayCampaign run_decay_campaign(const ExperimentConfig& cfg, int threads = 1);

struct ConvergenceRow {
  int depth = 0;  // 0 = Haar reference
  TraceMoment moment;
};

struct ConvergenceCampaign {
  std::vector<ConvergenceRow> rows;
  std::vector<ExperimentRecord> records;
};

/// E|Tr U|^2 at every configured depth plus a Haar reference row, with
/// cfg.ensemble samples each.
ConvergenceCampaign run_convergence_campaign(const ExperimentConfig& cfg, int threads = 1);

struct DecoherenceCampaign {
  std::vector<std::vector<RateScanEntry>> scans;  // per environment
  std::vector<std::string> errors;                // per environment, "" = ok
  std::vector<ScanRecord> records;
};

/// Draws cfg.ensemble GUE environments of env.qubits qubits and fits the
/// decay rate of |gamma_jk| for every configured pair. Environments whose fit
/// fails are reported with NaN rates.
DecoherenceCampaign run_decoherence_campaign(const ExperimentConfig& cfg, int threads = 1);

}  // namespace fdlab
