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

#include "irs/baselines.hpp"
#include "irs/channel.hpp"

#include <json.hpp>
#include <omp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <exception>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace irs {

namespace {

using nlohmann::json;

// Stream tags under a trial seed. Changing these changes every result.
enum StreamTag : std::uint64_t {
  kMultiPaths = 1,
  kSinglePaths = 2,
  kRandomBaseline = 3,
  kAoMulti = 4,
  kAoSingle = 5,
};

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw std::invalid_argument("config: '" + where + "' must be an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.contains(key)) throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
}

Point3 to_point(const json& j, const std::string& name) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("config: '" + name + "' must be [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

template <typename T>
void read_if(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

void parse_system(const json& j, ExperimentConfig& cfg) {
  reject_unknown_keys(j,
                      {"n_tx", "n_refl", "n_irs", "noise_user_dbm", "noise_eve_dbm", "power_dbm", "ap_position",
                       "irs_positions", "user_position", "eve_position", "pathloss_exponent", "pathloss_ref_db",
                       "paths_ap_irs", "paths_irs_user", "paths_irs_eve", "seed"},
                      "system");
  SystemConfig& s = cfg.system;
  read_if(j, "n_tx", s.n_tx);
  read_if(j, "n_refl", s.n_refl);
  read_if(j, "n_irs", s.n_irs);
  read_if(j, "noise_user_dbm", cfg.noise_user_dbm);
  read_if(j, "noise_eve_dbm", cfg.noise_eve_dbm);
  read_if(j, "power_dbm", cfg.power_dbm);
  read_if(j, "pathloss_exponent", s.pathloss_exponent);
  read_if(j, "pathloss_ref_db", s.pathloss_ref_db);
  read_if(j, "paths_ap_irs", s.paths_ap_irs);
  read_if(j, "paths_irs_user", s.paths_irs_user);
  read_if(j, "paths_irs_eve", s.paths_irs_eve);
  read_if(j, "seed", s.seed);
  if (j.contains("ap_position")) s.ap_position = to_point(j["ap_position"], "ap_position");
  if (j.contains("user_position")) s.user_position = to_point(j["user_position"], "user_position");
  if (j.contains("eve_position")) s.eve_position = to_point(j["eve_position"], "eve_position");
  if (j.contains("irs_positions")) {
    const json& arr = j["irs_positions"];
    if (!arr.is_array()) throw std::invalid_argument("config: 'irs_positions' must be an array");
    s.irs_positions.clear();
    for (const auto& p : arr) s.irs_positions.push_back(to_point(p, "irs_positions[]"));
  }
}

void parse_ao(const json& j, AoOptions& ao) {
  reject_unknown_keys(j,
                      {"max_rounds", "tol", "beamformer", "sca_max_iter", "sca_tol", "sca_random_init",
                       "randomization_samples", "onoff_eps", "onoff_max_outer", "onoff_max_inner", "onoff_step0",
                       "onoff_rule", "mo_max_iter", "mo_tol", "mo_grad_tol"},
                      "ao");
  read_if(j, "max_rounds", ao.max_rounds);
  read_if(j, "tol", ao.tol);
  if (j.contains("beamformer")) ao.beamformer = parse_beamformer(j["beamformer"].get<std::string>());
  read_if(j, "sca_max_iter", ao.sca.max_iter);
  read_if(j, "sca_tol", ao.sca.tol);
  read_if(j, "sca_random_init", ao.sca.random_init);
  read_if(j, "randomization_samples", ao.sca.randomization_samples);
  read_if(j, "onoff_eps", ao.onoff.eps);
  read_if(j, "onoff_max_outer", ao.onoff.max_outer);
  read_if(j, "onoff_max_inner", ao.onoff.max_inner);
  read_if(j, "onoff_step0", ao.onoff.step0);
  if (j.contains("onoff_rule")) {
    const auto rule = j["onoff_rule"].get<std::string>();
    if (rule == "lagrangian")
      ao.onoff.rule = ScoreRule::kLagrangian;
    else if (rule == "printed")
      ao.onoff.rule = ScoreRule::kPrinted;
    else
      throw std::invalid_argument("config: onoff_rule must be 'lagrangian' or 'printed'");
  }
  read_if(j, "mo_max_iter", ao.phases.max_iter);
  read_if(j, "mo_tol", ao.phases.tol);
  read_if(j, "mo_grad_tol", ao.phases.grad_tol);
}

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

struct SchemeOutcome {
  double rate = 0.0;
  int rounds = 0;
  std::vector<double> trace;
  double runtime_ms = 0.0;
};

struct SweepPoint {
  SystemConfig system;
  double value = 0.0;
};

std::vector<SweepPoint> sweep_points(const ExperimentConfig& cfg, ExperimentKind kind) {
  std::vector<SweepPoint> pts;
  switch (kind) {
    case ExperimentKind::kConvergence:
      pts.push_back({cfg.system_at_power(cfg.power_dbm), 0.0});
      break;
    case ExperimentKind::kPowerSweep:
      for (double p : cfg.power_sweep_dbm) pts.push_back({cfg.system_at_power(p), p});
      break;
    case ExperimentKind::kElementSweep:
      for (int n : cfg.element_sweep) {
        SystemConfig s = cfg.system_at_power(cfg.power_dbm);
        s.n_refl = n;
        pts.push_back({s, static_cast<double>(n)});
      }
      break;
  }
  return pts;
}

std::string_view sweep_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kConvergence:
      return "round";
    case ExperimentKind::kPowerSweep:
      return "power_dbm";
    case ExperimentKind::kElementSweep:
      return "n_refl";
  }
  return "";
}

bool record_less(const ExperimentRecord& a, const ExperimentRecord& b) {
  return std::tie(a.trial, a.scheme, a.sweep_value) < std::tie(b.trial, b.scheme, b.sweep_value);
}

}  // namespace

ExperimentKind parse_experiment(std::string_view name) {
  if (name == "convergence") return ExperimentKind::kConvergence;
  if (name == "power_sweep") return ExperimentKind::kPowerSweep;
  if (name == "element_sweep") return ExperimentKind::kElementSweep;
  throw std::invalid_argument("unknown experiment '" + std::string(name) + "'");
}

std::string_view experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kConvergence:
      return "convergence";
    case ExperimentKind::kPowerSweep:
      return "power_sweep";
    case ExperimentKind::kElementSweep:
      return "element_sweep";
  }
  return "";
}

Scheme parse_scheme(std::string_view label) {
  for (Scheme s : all_schemes())
    if (scheme_label(s) == label) return s;
  throw std::invalid_argument("unknown scheme '" + std::string(label) + "'");
}

std::string_view scheme_label(Scheme s) {
  switch (s) {
    case Scheme::kAoMultiIrs:
      return "ao-multi-irs";
    case Scheme::kSingleIrs:
      return "single-irs";
    case Scheme::kMrt:
      return "mrt";
    case Scheme::kRandomBf:
      return "random-bf";
  }
  return "";
}

std::vector<Scheme> parse_scheme_list(std::string_view list) {
  std::vector<Scheme> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = list.find(',', start);
    const auto end = comma == std::string_view::npos ? list.size() : comma;
    const auto item = list.substr(start, end - start);
    if (!item.empty()) {
      const Scheme s = parse_scheme(item);
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("scheme list is empty");
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Scheme> all_schemes() { return {Scheme::kAoMultiIrs, Scheme::kSingleIrs, Scheme::kMrt, Scheme::kRandomBf}; }

SystemConfig ExperimentConfig::system_at_power(double p_dbm) const {
  SystemConfig s = system;
  s.power_budget = dbm_to_watt(p_dbm);
  s.noise_user = dbm_to_watt(noise_user_dbm);
  s.noise_eve = dbm_to_watt(noise_eve_dbm);
  return s;
}

void ExperimentConfig::validate() const {
  system_at_power(power_dbm).validate();
  for (double p : power_sweep_dbm) dbm_to_watt(p);
  for (int n : element_sweep)
    if (n < 1) throw std::invalid_argument("config: element sweep entries must be >= 1");
  if (ao.max_rounds < 1) throw std::invalid_argument("config: ao.max_rounds must be >= 1");
}

ExperimentConfig default_experiment_config() {
  ExperimentConfig cfg;
  cfg.system = cfg.system_at_power(cfg.power_dbm);
  return cfg;
}

ExperimentConfig parse_experiment_config(std::string_view json_text) {
  ExperimentConfig cfg = default_experiment_config();
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  try {
    reject_unknown_keys(root, {"system", "sweeps", "single_irs_position", "ao"}, "top level");
    if (root.contains("system")) parse_system(root["system"], cfg);
    if (root.contains("sweeps")) {
      const json& sw = root["sweeps"];
      reject_unknown_keys(sw, {"power_dbm", "n_refl"}, "sweeps");
      read_if(sw, "power_dbm", cfg.power_sweep_dbm);
      read_if(sw, "n_refl", cfg.element_sweep);
    }
    if (root.contains("single_irs_position"))
      cfg.single_irs_position = to_point(root["single_irs_position"], "single_irs_position");
    if (root.contains("ao")) parse_ao(root["ao"], cfg.ao);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  cfg.system = cfg.system_at_power(cfg.power_dbm);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment_config(ss.str());
}

std::uint64_t trial_seed(std::uint64_t master, int trial) {
  return derive_seed(master, static_cast<std::uint64_t>(trial));
}

std::vector<ExperimentRecord> run_trial(const ExperimentConfig& cfg, const RunOptions& opts, int trial) {
  const std::uint64_t seed = trial_seed(opts.master_seed, trial);
  const SystemConfig base = cfg.system_at_power(cfg.power_dbm);
  Rng multi_path_rng(derive_seed(seed, kMultiPaths));
  const ChannelPaths multi_paths = draw_paths(base, multi_path_rng);
  const SystemConfig single_base = single_irs_config(base, cfg.single_irs_position);
  Rng single_path_rng(derive_seed(seed, kSinglePaths));
  const ChannelPaths single_paths = draw_paths(single_base, single_path_rng);

  std::vector<ExperimentRecord> out;
  const std::vector<SweepPoint> points = sweep_points(cfg, opts.kind);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const SystemConfig& sys = points[k].system;
    const ChannelSet multi = build_channels(sys, multi_paths);

    for (Scheme scheme : opts.schemes) {
      SchemeOutcome oc;
      const auto t0 = std::chrono::steady_clock::now();
      switch (scheme) {
        case Scheme::kAoMultiIrs: {
          Rng rng(derive_seed(derive_seed(seed, kAoMulti), k));
          const AoResult r = ao_solve(multi, sys, rng, cfg.ao);
          oc.rate = r.trace.back();
          oc.rounds = r.rounds;
          oc.trace = r.trace;
          break;
        }
        case Scheme::kSingleIrs: {
          const SystemConfig single_cfg = single_irs_config(sys, cfg.single_irs_position);
          const ChannelSet single = build_channels(single_cfg, single_paths);
          Rng rng(derive_seed(derive_seed(seed, kAoSingle), k));
          const AoResult r = single_irs_baseline(single, single_cfg, rng, cfg.ao);
          oc.rate = r.trace.back();
          oc.rounds = r.rounds;
          oc.trace = r.trace;
          break;
        }
        case Scheme::kMrt:
          oc.rate = secrecy_rate(multi, mrt_baseline(multi, sys), sys);
          oc.trace = {oc.rate};
          break;
        case Scheme::kRandomBf: {
          Rng rng(derive_seed(derive_seed(seed, kRandomBaseline), k));
          oc.rate = secrecy_rate(multi, random_baseline(multi, sys, rng), sys);
          oc.trace = {oc.rate};
          break;
        }
      }
      if (opts.record_timing)
        oc.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

      ExperimentRecord rec;
      rec.trial = trial;
      rec.scheme = scheme;
      rec.sweep_name = std::string(sweep_name(opts.kind));
      rec.rounds = oc.rounds;
      rec.runtime_ms = oc.runtime_ms;
      rec.seed = seed;
      if (opts.kind == ExperimentKind::kConvergence) {
        // One row per round, held at the final value once converged.
        for (int r = 0; r <= cfg.ao.max_rounds; ++r) {
          rec.sweep_value = r;
          rec.secrecy_rate = oc.trace[std::min<std::size_t>(static_cast<std::size_t>(r), oc.trace.size() - 1)];
          out.push_back(rec);
        }
      } else {
        rec.sweep_value = points[k].value;
        rec.secrecy_rate = oc.rate;
        out.push_back(rec);
      }
    }
  }
  std::sort(out.begin(), out.end(), record_less);
  return out;
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
  if (opts.trials < 1) throw std::invalid_argument("trials must be >= 1");
  cfg.validate();
  std::vector<std::vector<ExperimentRecord>> per_trial(static_cast<std::size_t>(opts.trials));
  std::exception_ptr failure;
  const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (int t = 0; t < opts.trials; ++t) {
    try {
      per_trial[static_cast<std::size_t>(t)] = run_trial(cfg, opts, t);
    } catch (...) {
#pragma omp critical(irs_experiment_failure)
      {
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ExperimentRecord> out;
  for (auto& v : per_trial) out.insert(out.end(), v.begin(), v.end());
  std::stable_sort(out.begin(), out.end(), record_less);
  return out;
}

std::vector<ExperimentRecord> run_experiment_serial(const ExperimentConfig& cfg, const RunOptions& opts) {
  if (opts.trials < 1) throw std::invalid_argument("trials must be >= 1");
  cfg.validate();
  std::vector<ExperimentRecord> out;
  for (int t = 0; t < opts.trials; ++t) {
    auto v = run_trial(cfg, opts, t);
    out.insert(out.end(), v.begin(), v.end());
  }
  std::stable_sort(out.begin(), out.end(), record_less);
  return out;
}

void write_csv(std::ostream& os, const std::vector<ExperimentRecord>& records) {
  os << kCsvHeader << '\n';
  for (const auto& r : records) {
    os << r.trial << ',' << scheme_label(r.scheme) << ',' << r.sweep_name << ',' << format_double(r.sweep_value)
       << ',' << format_double(r.secrecy_rate) << ',' << r.rounds << ',' << format_double(r.runtime_ms) << ','
       << r.seed << '\n';
  }
}

std::string format_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream ss;
  ss.imbue(std::locale::classic());
  write_csv(ss, records);
  return ss.str();
}

void write_csv_file(const std::string& path, const std::vector<ExperimentRecord>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << format_csv(records);
  if (!out) throw std::runtime_error("failed writing output file '" + path + "'");
}

std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records) {
  std::map<std::tuple<Scheme, std::string, double>, std::pair<double, int>> acc;
  for (const auto& r : records) {
    auto& slot = acc[{r.scheme, r.sweep_name, r.sweep_value}];
    slot.first += r.secrecy_rate;
    slot.second += 1;
  }
  std::vector<SummaryRow> rows;
  rows.reserve(acc.size());
  for (const auto& [key, v] : acc)
    rows.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), v.first / v.second, v.second});
  return rows;
}

void write_summary(std::ostream& os, const std::vector<SummaryRow>& rows) {
  os << "scheme,sweep_name,sweep_value,asr,trials\n";
  for (const auto& r : rows)
    os << scheme_label(r.scheme) << ',' << r.sweep_name << ',' << format_double(r.sweep_value) << ','
       << format_double(r.asr) << ',' << r.trials << '\n';
}

}  // namespace irs
