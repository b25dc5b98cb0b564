// Copyright 2026 The crowdsense Authors
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

// crowdsense command-line front end. Everything goes through the C API.
//
//   crowdsense generate --seed 7 --out data/
//   crowdsense run --data data/ --algorithm hcontext --n-percent 40 --out out/
//   crowdsense oracle --data data/ --n 3 --out out/
//   crowdsense sweep --data data/ --ts-list 240,480 --algorithm-list random,hcontext --out out/

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crowdsense/crowdsense.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalidConfig = 2;
constexpr int kExitParse = 3;
constexpr int kExitOracleGuard = 4;

// Carries a failed status out of a command body.
struct Failure {
  int exit_code;
  std::string message;
};

int ExitCodeFor(cs_status status) {
  switch (status) {
    case CS_OK:
      return kExitOk;
    case CS_ERR_INVALID_CONFIG:
    case CS_ERR_INVALID_ARGUMENT:
      return kExitInvalidConfig;
    case CS_ERR_PARSE:
    case CS_ERR_SCHEMA:
      return kExitParse;
    case CS_ERR_ORACLE_GUARD:
      return kExitOracleGuard;
    default:
      return kExitFailure;
  }
}

void Check(cs_status status) {
  if (status != CS_OK) {
    throw Failure{ExitCodeFor(status), std::string(cs_status_name(status)) + ": " + cs_last_error()};
  }
}

[[noreturn]] void ConfigFailure(const std::string& message) {
  throw Failure{kExitInvalidConfig, "invalid config: " + message};
}

// RAII wrappers over the opaque handles.
template <typename H, void (*Destroy)(H)>
class Handle {
 public:
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() {
    if (h_ != nullptr) Destroy(h_);
  }
  H* out() { return &h_; }
  H get() const { return h_; }

 private:
  H h_ = nullptr;
};

using Dataset = Handle<cs_dataset, cs_dataset_destroy>;
using Report = Handle<cs_report, cs_report_destroy>;
using OracleReport = Handle<cs_oracle_report, cs_oracle_report_destroy>;
using Sweep = Handle<cs_sweep, cs_sweep_destroy>;

void EnsureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Failure{kExitFailure, "cannot create " + dir.string() + ": " + ec.message()};
}

// --config file: one key=value per line, '#' comments. Keys are the long
// flag names; '_' and '-' are interchangeable.
using KeyValues = std::map<std::string, std::string>;

std::string Trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

KeyValues ReadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kExitInvalidConfig, "cannot open config file " + path};
  KeyValues kv;
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      ConfigFailure(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = Trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    kv[key] = Trim(line.substr(eq + 1));
  }
  return kv;
}

template <typename T>
T Convert(const std::string& key, const std::string& text) {
  T value{};
  if constexpr (std::is_same_v<T, std::string>) {
    return text;
  } else {
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) ConfigFailure("bad value '" + text + "' for " + key);
    return value;
  }
}

template <typename T>
std::vector<T> ConvertList(const std::string& key, const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Convert<T>(key, Trim(item)));
  return out;
}

// Flags first, then the config file, then the fallback.
class Settings {
 public:
  Settings(const std::optional<std::string>& config_path, std::vector<std::string> known) {
    if (config_path) file_ = ReadConfigFile(*config_path);
    for (const auto& [key, value] : file_) {
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        ConfigFailure("unknown key '" + key + "' in config file");
      }
    }
  }

  template <typename T>
  std::optional<T> Get(const std::string& key, const std::optional<T>& flag) const {
    if (flag) return flag;
    if (auto it = file_.find(key); it != file_.end()) return Convert<T>(key, it->second);
    return std::nullopt;
  }

  template <typename T>
  std::vector<T> GetList(const std::string& key, const std::vector<T>& flag) const {
    if (!flag.empty()) return flag;
    if (auto it = file_.find(key); it != file_.end()) return ConvertList<T>(key, it->second);
    return {};
  }

  bool Has(const std::string& key) const { return file_.contains(key); }

 private:
  KeyValues file_;
};

struct DataFlags {
  std::optional<std::string> data;
  std::optional<std::int64_t> tau;
};

struct SimFlags {
  std::optional<std::string> algorithm;
  std::optional<std::string> bootstrap;
  std::optional<std::int64_t> n;
  std::optional<double> n_percent;
  std::optional<double> k_fraction;
  std::optional<std::int64_t> ts;
  std::optional<std::int64_t> td;
  std::optional<std::int64_t> rounds;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> start;
};

const std::vector<std::string> kDataKeys = {"data", "tau", "out"};
const std::vector<std::string> kSimKeys = {"algorithm", "bootstrap", "n",  "n-percent", "k-fraction",
                                           "ts",        "td",        "rounds", "seed",  "start"};

void AddDataFlags(CLI::App* cmd, DataFlags& f) {
  cmd->add_option("--data", f.data,
                  "Directory with contacts.csv and devices.csv (friends.csv and interests.csv "
                  "optional)");
  cmd->add_option("--tau", f.tau,
                  "Inquiry interval in seconds; defaults to the value in <data>/manifest.json");
}

void AddSimFlags(CLI::App* cmd, SimFlags& f) {
  cmd->add_option("--algorithm", f.algorithm, "random | greedy | hcontext");
  cmd->add_option("--bootstrap", f.bootstrap, "random | friendship | interest");
  auto* n = cmd->add_option("--n", f.n, "Sensing budget as a device count");
  auto* pct = cmd->add_option("--n-percent", f.n_percent, "Sensing budget as a percentage of V_in");
  n->excludes(pct);
  cmd->add_option("--k-fraction", f.k_fraction, "Kept fraction of the budget (HCONTEXT)");
  cmd->add_option("--ts", f.ts, "Sensing interval in seconds");
  cmd->add_option("--td", f.td, "Decision interval in seconds (recorded only)");
  cmd->add_option("--rounds", f.rounds, "Number of rounds");
  cmd->add_option("--seed", f.seed, "Random seed");
  cmd->add_option("--start", f.start, "Start time of round 0 in seconds");
}

cs_sim_config BuildConfig(const SimFlags& f, const Settings& s) {
  cs_sim_config c;
  cs_sim_config_default(&c);
  if (auto v = s.Get("algorithm", f.algorithm)) Check(cs_parse_algorithm(v->c_str(), &c.algorithm));
  if (auto v = s.Get("bootstrap", f.bootstrap)) Check(cs_parse_bootstrap(v->c_str(), &c.bootstrap));

  // A flag for one budget form overrides the file's value for the other.
  std::optional<std::int64_t> n = f.n;
  std::optional<double> pct = f.n_percent;
  if (!n && !pct) {
    if (s.Has("n") && s.Has("n-percent")) ConfigFailure("n and n-percent are mutually exclusive");
    n = s.Get<std::int64_t>("n", std::nullopt);
    pct = s.Get<double>("n-percent", std::nullopt);
  }
  if (n) {
    c.n_count = *n;
    c.n_fraction = 0.0;
    if (*n <= 0) ConfigFailure("--n must be positive");
  } else if (pct) {
    if (!(*pct > 0.0)) ConfigFailure("--n-percent must be positive");
    c.n_count = 0;
    c.n_fraction = *pct / 100.0;
  }
  if (auto v = s.Get("k-fraction", f.k_fraction)) c.k_fraction = *v;
  if (auto v = s.Get("ts", f.ts)) c.ts_seconds = *v;
  if (auto v = s.Get("td", f.td)) c.td_seconds = *v;
  if (auto v = s.Get("rounds", f.rounds)) c.rounds = *v;
  if (auto v = s.Get("seed", f.seed)) c.seed = *v;
  if (auto v = s.Get("start", f.start)) c.start_time_s = *v;
  return c;
}

void LoadDataset(const DataFlags& f, const Settings& s, Dataset& ds) {
  const auto data = s.Get("data", f.data);
  if (!data) ConfigFailure("--data is required");
  const fs::path dir(*data);
  std::optional<std::int64_t> tau = s.Get("tau", f.tau);
  if (!tau) {
    const fs::path manifest = dir / "manifest.json";
    std::ifstream in(manifest);
    if (!in) ConfigFailure("--tau is required when " + manifest.string() + " is absent");
    try {
      tau = nlohmann::json::parse(in).at("tau_s").get<std::int64_t>();
    } catch (const nlohmann::json::exception& e) {
      ConfigFailure("cannot read tau_s from " + manifest.string() + ": " + e.what());
    }
  }
  const auto optional_file = [&](const char* name) -> std::optional<std::string> {
    fs::path p = dir / name;
    if (fs::exists(p)) return p.string();
    return std::nullopt;
  };
  const std::string contacts = (dir / "contacts.csv").string();
  const std::string devices = (dir / "devices.csv").string();
  const auto friends = optional_file("friends.csv");
  const auto interests = optional_file("interests.csv");
  Check(cs_dataset_load(contacts.c_str(), devices.c_str(), friends ? friends->c_str() : nullptr,
                        interests ? interests->c_str() : nullptr, *tau, ds.out()));
}

fs::path OutDir(const std::optional<std::string>& flag, const Settings& s) {
  const auto out = s.Get("out", flag);
  if (!out) ConfigFailure("--out is required");
  EnsureDir(*out);
  return *out;
}

double MeanRatio(cs_report report) {
  const std::size_t rounds = cs_report_round_count(report);
  if (rounds == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < rounds; ++i) {
    cs_round r;
    Check(cs_report_round(report, i, &r));
    sum += r.coverage_ratio;
  }
  return sum / static_cast<double>(rounds);
}

// ---- generate ----

struct GenerateFlags {
  cs_synth_params params{};
  std::uint64_t seed = 0;
  std::string out;
};

void CmdGenerate(const GenerateFlags& f) {
  Dataset ds;
  Check(cs_dataset_generate(&f.params, f.seed, ds.out()));
  EnsureDir(f.out);
  Check(cs_dataset_write(ds.get(), f.out.c_str()));
  cs_dataset_info info;
  Check(cs_dataset_info_get(ds.get(), &info));
  std::cout << "wrote " << info.n_events << " contact events (" << info.n_internal
            << " internal, " << info.n_external << " external) to " << f.out << '\n';
}

// ---- run / oracle ----

struct CommonFlags {
  std::optional<std::string> config;
  std::optional<std::string> out;
  DataFlags data;
  SimFlags sim;
};

std::vector<std::string> Keys(std::vector<std::string> extra = {}) {
  std::vector<std::string> keys = kDataKeys;
  keys.insert(keys.end(), kSimKeys.begin(), kSimKeys.end());
  keys.insert(keys.end(), extra.begin(), extra.end());
  return keys;
}

void CmdRun(const CommonFlags& f) {
  const Settings s(f.config, Keys());
  Dataset ds;
  LoadDataset(f.data, s, ds);
  const cs_sim_config config = BuildConfig(f.sim, s);
  const fs::path out = OutDir(f.out, s);
  Report report;
  Check(cs_run(ds.get(), &config, report.out()));
  Check(cs_report_write_csv(report.get(), (out / "report.csv").string().c_str()));
  Check(cs_report_write_manifest(report.get(), ds.get(), (out / "manifest.json").string().c_str()));
  std::cout << cs_report_round_count(report.get()) << " rounds, mean coverage "
            << MeanRatio(report.get());
  if (const auto dropped = cs_report_truncated_rounds(report.get()); dropped > 0) {
    std::cout << " (" << dropped << " rounds past the end of the trace dropped)";
  }
  std::cout << '\n';
}

void CmdOracle(const CommonFlags& f) {
  const Settings s(f.config, Keys());
  Dataset ds;
  LoadDataset(f.data, s, ds);
  const cs_sim_config config = BuildConfig(f.sim, s);
  const fs::path out = OutDir(f.out, s);
  OracleReport report;
  Check(cs_oracle_compare(ds.get(), &config, report.out()));
  Check(cs_oracle_report_write_csv(report.get(), (out / "oracle_report.csv").string().c_str()));
  Check(cs_oracle_report_write_manifest(report.get(), ds.get(),
                                        (out / "manifest.json").string().c_str()));
  std::size_t gap[3] = {0, 0, 0};
  const std::size_t rows = cs_oracle_report_row_count(report.get());
  for (std::size_t i = 0; i < rows; ++i) {
    cs_oracle_row r;
    Check(cs_oracle_report_row(report.get(), i, &r));
    gap[0] += r.oracle_edges - r.random_edges;
    gap[1] += r.oracle_edges - r.greedy_edges;
    gap[2] += r.oracle_edges - r.hcontext_edges;
  }
  std::cout << rows << " rounds, total gap to optimum: random " << gap[0] << ", greedy " << gap[1]
            << ", hcontext " << gap[2] << '\n';
}

// ---- sweep ----

struct SweepFlags {
  std::optional<std::string> config;
  std::optional<std::string> out;
  DataFlags data;
  SimFlags base;
  std::vector<std::int64_t> ts;
  std::vector<double> n_percent;
  std::vector<std::int64_t> n;
  std::vector<std::string> algorithms;
  std::vector<std::string> bootstraps;
  std::vector<std::uint64_t> seeds;
};

void CmdSweep(const SweepFlags& f) {
  const Settings s(f.config, Keys({"ts-list", "n-percent-list", "n-list", "algorithm-list",
                                   "bootstrap-list", "seed-list"}));
  Dataset ds;
  LoadDataset(f.data, s, ds);
  const cs_sim_config base = BuildConfig(f.base, s);
  const fs::path out = OutDir(f.out, s);

  const auto ts = s.GetList("ts-list", f.ts);
  auto fractions = s.GetList("n-percent-list", f.n_percent);
  for (double& p : fractions) {
    if (!(p > 0.0)) ConfigFailure("n-percent values must be positive");
    p /= 100.0;
  }
  const auto counts = s.GetList("n-list", f.n);
  std::vector<cs_algorithm> algorithms;
  for (const auto& name : s.GetList("algorithm-list", f.algorithms)) {
    Check(cs_parse_algorithm(name.c_str(), &algorithms.emplace_back()));
  }
  std::vector<cs_bootstrap> bootstraps;
  for (const auto& name : s.GetList("bootstrap-list", f.bootstraps)) {
    Check(cs_parse_bootstrap(name.c_str(), &bootstraps.emplace_back()));
  }
  const auto seeds = s.GetList("seed-list", f.seeds);

  const cs_sweep_grid grid{ts.data(),         ts.size(),         fractions.data(),
                           fractions.size(),  counts.data(),     counts.size(),
                           algorithms.data(), algorithms.size(), bootstraps.data(),
                           bootstraps.size(), seeds.data(),      seeds.size()};
  Sweep sweep;
  Check(cs_sweep_run(ds.get(), &base, &grid, sweep.out()));
  Check(cs_sweep_write_csv(sweep.get(), (out / "sweep.csv").string().c_str()));
  Check(cs_sweep_write_manifest(sweep.get(), ds.get(), (out / "manifest.json").string().c_str()));

  const std::size_t points = cs_sweep_point_count(sweep.get());
  for (std::size_t i = 0; i < points; ++i) {
    cs_sim_config c;
    cs_report r = nullptr;
    Check(cs_sweep_point(sweep.get(), i, &c, &r));
    std::cout << "point " << i << ": ts=" << c.ts_seconds << ' '
              << cs_algorithm_name(c.algorithm) << '/' << cs_bootstrap_name(c.bootstrap)
              << " seed=" << c.seed << " mean coverage " << MeanRatio(r) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budgeted crowd-sensing node selection simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cs_version()));

  GenerateFlags gen;
  cs_synth_params_default(&gen.params);
  auto* generate = app.add_subcommand("generate", "Write a synthetic trace and social profiles");
  generate->add_option("--internal", gen.params.n_internal, "Internal devices")->capture_default_str();
  generate->add_option("--external", gen.params.n_external, "External devices")->capture_default_str();
  generate->add_option("--groups", gen.params.n_groups, "Social groups")->capture_default_str();
  generate->add_option("--steps", gen.params.steps, "Scan ticks")->capture_default_str();
  generate->add_option("--tau", gen.params.tau_s, "Inquiry interval (s)")->capture_default_str();
  generate->add_option("--p-detect", gen.params.p_detect, "Detection probability")
      ->capture_default_str();
  generate->add_option("--p-move", gen.params.p_move, "Per-tick move probability")
      ->capture_default_str();
  generate->add_option("--locations", gen.params.n_locations, "Number of locations")
      ->capture_default_str();
  generate->add_option("--friendship", gen.params.friendship_within_group,
                       "Friendship probability within a group")
      ->capture_default_str();
  generate->add_option("--interests-per-device", gen.params.interests_per_device,
                       "Interest tags per device")
      ->capture_default_str();
  generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  generate->add_option("--out", gen.out, "Output directory")->required();

  CommonFlags run_flags;
  auto* run = app.add_subcommand("run", "Simulate one configuration and write report.csv");
  run->add_option("--config", run_flags.config, "Flat key=value file; flags override it");
  run->add_option("--out", run_flags.out, "Output directory");
  AddDataFlags(run, run_flags.data);
  AddSimFlags(run, run_flags.sim);

  CommonFlags oracle_flags;
  auto* oracle = app.add_subcommand(
      "oracle", "Compare every selector against the enumerated optimum (small instances)");
  oracle->add_option("--config", oracle_flags.config, "Flat key=value file; flags override it");
  oracle->add_option("--out", oracle_flags.out, "Output directory");
  AddDataFlags(oracle, oracle_flags.data);
  AddSimFlags(oracle, oracle_flags.sim);

  SweepFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "Run the cartesian product of parameter lists");
  sweep->add_option("--config", sweep_flags.config, "Flat key=value file; flags override it");
  sweep->add_option("--out", sweep_flags.out, "Output directory");
  AddDataFlags(sweep, sweep_flags.data);
  AddSimFlags(sweep, sweep_flags.base);
  sweep->add_option("--ts-list", sweep_flags.ts, "Sensing intervals (s)")->delimiter(',');
  sweep->add_option("--n-percent-list", sweep_flags.n_percent, "Budgets (%)")->delimiter(',');
  sweep->add_option("--n-list", sweep_flags.n, "Budgets (count)")->delimiter(',');
  sweep->add_option("--algorithm-list", sweep_flags.algorithms, "Algorithms")->delimiter(',');
  sweep->add_option("--bootstrap-list", sweep_flags.bootstraps, "Bootstraps")->delimiter(',');
  sweep->add_option("--seed-list", sweep_flags.seeds, "Seeds")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidConfig;
  }

  try {
    if (*generate) CmdGenerate(gen);
    if (*run) CmdRun(run_flags);
    if (*oracle) CmdOracle(oracle_flags);
    if (*sweep) CmdSweep(sweep_flags);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.exit_code;
  }
  return kExitOk;
}
