// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "irs/ao.hpp"
#include "irs/model.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace irs {

enum class ExperimentKind { kConvergence, kPowerSweep, kElementSweep };

ExperimentKind parse_experiment(std::string_view name);
std::string_view experiment_name(ExperimentKind kind);

/// Scheme labels in canonical (CSV sort) order.
enum class Scheme { kAoMultiIrs, kSingleIrs, kMrt, kRandomBf };

Scheme parse_scheme(std::string_view label);
std::string_view scheme_label(Scheme s);
/// Comma-separated labels, e.g. "ao-multi-irs,mrt".
std::vector<Scheme> parse_scheme_list(std::string_view list);
std::vector<Scheme> all_schemes();

/// Everything an experiment run needs besides the CLI switches. Powers are
/// kept in dBm here and converted into `system` by `system_at_power`.
struct ExperimentConfig {
  SystemConfig system;
  double power_dbm = 30.0;
  double noise_user_dbm = -110.0;
  double noise_eve_dbm = -110.0;
  std::vector<double> power_sweep_dbm{0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0};
  std::vector<int> element_sweep{4, 8, 16, 32, 64};
  Point3 single_irs_position{0.0, 60.0, 20.0};
  AoOptions ao;

  SystemConfig system_at_power(double p_dbm) const;
  void validate() const;
};

/// Built-in defaults: 16 AP antennas, three 16-element IRSs at (0,20,20),
/// (0,40,20), (0,60,20), user (5,40,0), eavesdropper (5,60,0), -110 dBm noise,
/// zeta = -61.4 dB, c = 2.2, three paths per link.
ExperimentConfig default_experiment_config();

/// JSON document; absent keys keep their defaults, unknown keys are errors.
ExperimentConfig parse_experiment_config(std::string_view json_text);
ExperimentConfig load_experiment_config(const std::string& path);

struct ExperimentRecord {
  int trial = 0;
  Scheme scheme = Scheme::kAoMultiIrs;
  std::string sweep_name;
  double sweep_value = 0.0;
  double secrecy_rate = 0.0;
  int rounds = 0;
  double runtime_ms = 0.0;
  std::uint64_t seed = 0;
};

struct RunOptions {
  ExperimentKind kind = ExperimentKind::kPowerSweep;
  int trials = 1;
  std::uint64_t master_seed = 1;
  std::vector<Scheme> schemes = all_schemes();
  /// OpenMP thread count for the parallel driver; 0 keeps the runtime default.
  int threads = 0;
  /// Wall-clock runtime is nondeterministic, so it is written only on request.
  bool record_timing = false;
};

/// Seed of trial `trial` under `master`.
std::uint64_t trial_seed(std::uint64_t master, int trial);

/// All records of one trial, in canonical order.
std::vector<ExperimentRecord> run_trial(const ExperimentConfig& cfg, const RunOptions& opts, int trial);

/// Trials distributed over OpenMP threads; result sorted by (trial, scheme, sweep value).
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg, const RunOptions& opts);

/// Single-threaded reference driver; same output as run_experiment.
std::vector<ExperimentRecord> run_experiment_serial(const ExperimentConfig& cfg, const RunOptions& opts);

inline constexpr std::string_view kCsvHeader = "trial,scheme,sweep_name,sweep_value,secrecy_rate,rounds,runtime_ms,seed";

void write_csv(std::ostream& os, const std::vector<ExperimentRecord>& records);
std::string format_csv(const std::vector<ExperimentRecord>& records);
void write_csv_file(const std::string& path, const std::vector<ExperimentRecord>& records);

/// Mean secrecy rate over trials for one (scheme, sweep point).
struct SummaryRow {
  Scheme scheme = Scheme::kAoMultiIrs;
  std::string sweep_name;
  double sweep_value = 0.0;
  double asr = 0.0;
  int trials = 0;
};

std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records);
void write_summary(std::ostream& os, const std::vector<SummaryRow>& rows);

}  // namespace irs
