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

#include "irs/experiment.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"Multi-IRS secrecy-rate Monte Carlo simulator"};

  std::string config_path;
  std::string experiment = "power_sweep";
  int trials = 1;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string beamformer;
  std::string schemes;
  bool emit_summary = false;
  bool timing = false;
  int threads = 0;

  app.add_option("--config", config_path, "JSON configuration file")->required();
  app.add_option("--experiment", experiment, "convergence | power_sweep | element_sweep")
      ->check(CLI::IsMember({"convergence", "power_sweep", "element_sweep"}));
  app.add_option("--trials", trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "Master seed (default: system.seed from the config)");
  app.add_option("--out", out_path, "Output CSV path")->required();
  app.add_option("--beamformer", beamformer, "Beamforming block: sca | gevd")
      ->check(CLI::IsMember({"sca", "gevd"}));
  app.add_option("--scheme", schemes, "Comma-separated schemes (default: all)");
  app.add_flag("--emit-summary", emit_summary, "Print mean secrecy rate per sweep point");
  app.add_option("--threads", threads, "Worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
  app.add_flag("--timing", timing, "Record wall-clock runtime_ms (breaks byte-identical output)");

  CLI11_PARSE(app, argc, argv);

  try {
    irs::ExperimentConfig cfg = irs::load_experiment_config(config_path);
    if (!beamformer.empty()) cfg.ao.beamformer = irs::parse_beamformer(beamformer);

    irs::RunOptions opts;
    opts.kind = irs::parse_experiment(experiment);
    opts.trials = trials;
    opts.master_seed = seed_opt->count() > 0 ? seed : cfg.system.seed;
    opts.threads = threads;
    opts.record_timing = timing;
    if (!schemes.empty()) opts.schemes = irs::parse_scheme_list(schemes);

    const auto records = irs::run_experiment(cfg, opts);
    irs::write_csv_file(out_path, records);
    if (emit_summary) irs::write_summary(std::cout, irs::summarize(records));
  } catch (const std::exception& e) {
    std::cerr << "irs_secrecy_sim: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
