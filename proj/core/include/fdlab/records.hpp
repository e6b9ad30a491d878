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

// Campaign output rows and their CSV/JSON encodings. CSV values carry 17
// significant digits so doubles survive a write/read cycle exactly; missing
// values are written as `nan` (CSV) or null (JSON).

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fdlab/config.hpp"

namespace fdlab {

struct ExperimentRecord {
  std::string experiment_id;
  std::uint64_t map_seed = 0;
  int step = 0;
  double re_trace = 0.0;
  double im_trace = 0.0;
  double fidelity = 0.0;
  double ensemble_mean = 0.0;
  double ensemble_std = 0.0;
  int shots = 0;
  double std_error = 0.0;  // column `stderr`

  /// Field-wise equality with NaN == NaN.
  bool same_as(const ExperimentRecord& other) const;
};

inline constexpr std::string_view kRecordHeader =
    "experiment_id,map_seed,step,re_trace,im_trace,fidelity,ensemble_mean,ensemble_std,shots,stderr";

/// One row of a decoherence rate scan.
struct ScanRecord {
  std::string experiment_id;
  double delta_lambda = 0.0;
  double rate = 0.0;
  double residual = 0.0;

  bool same_as(const ScanRecord& other) const;
};

inline constexpr std::string_view kScanHeader = "experiment_id,delta_lambda,rate,residual";

/// %.17g with `nan`, `inf` and `-inf` spelled out.
std::string format_double(double value);
double parse_double(std::string_view text);

void write_records(const std::vector<ExperimentRecord>& records, std::ostream& out, OutputFormat format);
void write_records(const std::vector<ExperimentRecord>& records, const std::filesystem::path& path,
                   OutputFormat format);
std::vector<ExperimentRecord> read_records(std::istream& in, OutputFormat format);
std::vector<ExperimentRecord> read_records(const std::filesystem::path& path, OutputFormat format);

void write_scan(const std::vector<ScanRecord>& rows, std::ostream& out, OutputFormat format);
void write_scan(const std::vector<ScanRecord>& rows, const std::filesystem::path& path,
                OutputFormat format);
std::vector<ScanRecord> read_scan(std::istream& in, OutputFormat format);

}  // namespace fdlab
