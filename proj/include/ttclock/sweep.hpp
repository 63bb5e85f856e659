// Copyright 2026 The ttclock Authors
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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ttclock/potential.hpp"
#include "ttclock/verify.hpp"

namespace ttclock {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kChecksFailed = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kNumericalFailure = 3;
inline constexpr int kPartialResults = 4;
}  // namespace exit_code

enum class OutputFormat { Csv, Json };

struct KGrid {
  double k_min = 0.05;
  double k_max = 0.95;
  int n_points = 181;
};

struct SweepConfig {
  BarrierKind kind = BarrierKind::Square;
  double v0 = 0.0;
  double width = 1.0;
  double quad_coeff = 0.0;
  double slope_total = 0.0;
  std::vector<SamplePoint> samples;
  UnitSystem units;
  KGrid k_grid;
  double theta = 0.0;
  double phi = 0.0;
  double omega = 0.0;        // <= 0: probe omega
  double probe_omega = 0.0;  // <= 0: 1e-6 * max V / hbar
  int slices = 2000;
  std::vector<std::string> outputs;
  OutputFormat format = OutputFormat::Csv;
  std::uint64_t seed = 12345;
};

SweepConfig default_config();
SweepConfig figure_preset(std::string_view name);
std::vector<std::string> figure_names();

// Fields absent from the document keep their value in base.
SweepConfig config_from_json(const nlohmann::json& doc, SweepConfig base);

// Throws ConfigError naming the offending field.
void validate(const SweepConfig& config);

BarrierSpec barrier_from_config(const SweepConfig& config);

// Reference wavenumber for k_over_k0 (k0, or 1 without a barrier).
double k_reference(const BarrierSpec& barrier);
std::vector<double> k_values(const SweepConfig& config, const BarrierSpec& barrier);

const std::vector<std::string>& available_quantities();
std::vector<std::string> default_outputs(std::string_view subcommand);

struct OutputRow {
  double k_over_k0 = 0.0;
  std::vector<std::optional<double>> values;
  std::string status;
};

struct SweepResult {
  std::vector<std::string> columns;
  std::vector<OutputRow> rows;
  int exit_code = exit_code::kOk;
};

SweepResult run_sweep(const SweepConfig& config);

void write_csv(std::ostream& out, const SweepResult& result);
void write_json(std::ostream& out, const SweepResult& result);

struct VerifyResult {
  std::vector<IdentityReport> reports;
  int exit_code = exit_code::kOk;
};

VerifyResult verify_command(const SweepConfig& config);

nlohmann::json to_json(const IdentityReport& report);
void write_reports_csv(std::ostream& out, const std::vector<IdentityReport>& reports);
void write_reports_json(std::ostream& out, const std::vector<IdentityReport>& reports);

// 17 significant digits
std::string format_number(double value);

// TTCLOCK_THREADS, else hardware concurrency.
unsigned worker_count();

}  // namespace ttclock
