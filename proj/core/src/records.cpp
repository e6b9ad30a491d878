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

#include "fdlab/records.hpp"

#include <cmath>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "fdlab/error.hpp"

namespace fdlab {
namespace {

using nlohmann::json;

bool same_double(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

json to_json_number(double v) {
  return std::isfinite(v) ? json(v) : json(nullptr);
}

double from_json_number(const json& v) {
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T parse_integer(const std::string& text) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.empty() || text.front() == '-') {
    throw IoError("malformed integer '" + text + "' in records");
  }
  return static_cast<T>(v);
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

bool ExperimentRecord::same_as(const ExperimentRecord& o) const {
  return experiment_id == o.experiment_id && map_seed == o.map_seed && step == o.step &&
         same_double(re_trace, o.re_trace) && same_double(im_trace, o.im_trace) &&
         same_double(fidelity, o.fidelity) && same_double(ensemble_mean, o.ensemble_mean) &&
         same_double(ensemble_std, o.ensemble_std) && shots == o.shots &&
         same_double(std_error, o.std_error);
}

bool ScanRecord::same_as(const ScanRecord& o) const {
  return experiment_id == o.experiment_id && same_double(delta_lambda, o.delta_lambda) &&
         same_double(rate, o.rate) && same_double(residual, o.residual);
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

double parse_double(std::string_view text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  const std::string s(text);
  char* end = nullptr;
  // strtod, unlike stod, accepts subnormal values.
  const double v = s.empty() ? 0.0 : std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || std::isspace(static_cast<unsigned char>(s.front()))) {
    throw IoError("malformed number '" + s + "' in records");
  }
  return v;
}

void write_records(const std::vector<ExperimentRecord>& records, std::ostream& out,
                   OutputFormat format) {
  if (format == OutputFormat::Csv) {
    out << kRecordHeader << '\n';
    for (const auto& r : records) {
      out << r.experiment_id << ',' << r.map_seed << ',' << r.step << ',' << format_double(r.re_trace)
          << ',' << format_double(r.im_trace) << ',' << format_double(r.fidelity) << ','
          << format_double(r.ensemble_mean) << ',' << format_double(r.ensemble_std) << ','
          << r.shots << ',' << format_double(r.std_error) << '\n';
    }
    return;
  }
  json rows = json::array();
  for (const auto& r : records) {
    rows.push_back({{"experiment_id", r.experiment_id},
                    {"map_seed", r.map_seed},
                    {"step", r.step},
                    {"re_trace", to_json_number(r.re_trace)},
                    {"im_trace", to_json_number(r.im_trace)},
                    {"fidelity", to_json_number(r.fidelity)},
                    {"ensemble_mean", to_json_number(r.ensemble_mean)},
                    {"ensemble_std", to_json_number(r.ensemble_std)},
                    {"shots", r.shots},
                    {"stderr", to_json_number(r.std_error)}});
  }
  out << rows.dump(1) << '\n';
}

void write_records(const std::vector<ExperimentRecord>& records, const std::filesystem::path& path,
                   OutputFormat format) {
  std::ofstream out = open_output(path);
  write_records(records, out, format);
  finish_output(out, path);
}

std::vector<ExperimentRecord> read_records(std::istream& in, OutputFormat format) {
  std::vector<ExperimentRecord> out;
  if (format == OutputFormat::Json) {
    json rows;
    try {
      rows = json::parse(in);
      for (const auto& o : rows) {
        ExperimentRecord r;
        r.experiment_id = o.at("experiment_id").get<std::string>();
        r.map_seed = o.at("map_seed").get<std::uint64_t>();
        r.step = o.at("step").get<int>();
        r.re_trace = from_json_number(o.at("re_trace"));
        r.im_trace = from_json_number(o.at("im_trace"));
        r.fidelity = from_json_number(o.at("fidelity"));
        r.ensemble_mean = from_json_number(o.at("ensemble_mean"));
        r.ensemble_std = from_json_number(o.at("ensemble_std"));
        r.shots = o.at("shots").get<int>();
        r.std_error = from_json_number(o.at("stderr"));
        out.push_back(std::move(r));
      }
    } catch (const json::exception& e) {
      throw IoError(std::string("malformed JSON records: ") + e.what());
    }
    return out;
  }
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != kRecordHeader) {
    throw IoError("records CSV header mismatch");
  }
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 10) throw IoError("records CSV row has " + std::to_string(cells.size()) + " fields");
    ExperimentRecord r;
    r.experiment_id = cells[0];
    r.map_seed = parse_integer<std::uint64_t>(cells[1]);
    r.step = parse_integer<int>(cells[2]);
    r.re_trace = parse_double(cells[3]);
    r.im_trace = parse_double(cells[4]);
    r.fidelity = parse_double(cells[5]);
    r.ensemble_mean = parse_double(cells[6]);
    r.ensemble_std = parse_double(cells[7]);
    r.shots = parse_integer<int>(cells[8]);
    r.std_error = parse_double(cells[9]);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ExperimentRecord> read_records(const std::filesystem::path& path, OutputFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  try {
    return read_records(in, format);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_scan(const std::vector<ScanRecord>& rows, std::ostream& out, OutputFormat format) {
  if (format == OutputFormat::Csv) {
    out << kScanHeader << '\n';
    for (const auto& r : rows) {
      out << r.experiment_id << ',' << format_double(r.delta_lambda) << ',' << format_double(r.rate)
          << ',' << format_double(r.residual) << '\n';
    }
    return;
  }
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"experiment_id", r.experiment_id},
                   {"delta_lambda", to_json_number(r.delta_lambda)},
                   {"rate", to_json_number(r.rate)},
                   {"residual", to_json_number(r.residual)}});
  }
  out << arr.dump(1) << '\n';
}

void write_scan(const std::vector<ScanRecord>& rows, const std::filesystem::path& path,
                OutputFormat format) {
  std::ofstream out = open_output(path);
  write_scan(rows, out, format);
  finish_output(out, path);
}

std::vector<ScanRecord> read_scan(std::istream& in, OutputFormat format) {
  std::vector<ScanRecord> out;
  if (format == OutputFormat::Json) {
    try {
      const json arr = json::parse(in);
      for (const auto& o : arr) {
        out.push_back({o.at("experiment_id").get<std::string>(), from_json_number(o.at("delta_lambda")),
                       from_json_number(o.at("rate")), from_json_number(o.at("residual"))});
      }
    } catch (const json::exception& e) {
      throw IoError(std::string("malformed JSON scan: ") + e.what());
    }
    return out;
  }
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != kScanHeader) throw IoError("scan CSV header mismatch");
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 4) throw IoError("scan CSV row has " + std::to_string(cells.size()) + " fields");
    out.push_back({cells[0], parse_double(cells[1]), parse_double(cells[2]), parse_double(cells[3])});
  }
  return out;
}

}  // namespace fdlab
