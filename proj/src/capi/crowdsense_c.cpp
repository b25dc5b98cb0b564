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

#include "crowdsense/crowdsense.h"

#include <algorithm>
#include <filesystem>
#include <map>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/errors.hpp"
#include "core/report_io.hpp"
#include "core/simulator.hpp"
#include "core/trace_ingest.hpp"

struct cs_dataset_s {
  crowdsense::ContactTrace trace;
  crowdsense::SocialProfiles profiles;
  std::size_t dropped_profile_rows = 0;
  std::map<std::string, std::string> input_digests;
  std::optional<std::pair<crowdsense::SynthParams, std::uint64_t>> synthesized;
};

struct cs_report_s {
  crowdsense::RunResult result;
};

struct cs_oracle_report_s {
  crowdsense::ResolvedConfig resolved;
  std::vector<crowdsense::OracleRow> rows;
};

struct cs_sweep_s {
  std::vector<crowdsense::SweepPoint> points;
  // Borrowed views handed out by cs_sweep_point.
  std::vector<cs_report_s> reports;
};

namespace {

using namespace crowdsense;

thread_local std::string g_last_error;

cs_status StatusFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidConfig:
      return CS_ERR_INVALID_CONFIG;
    case ErrorKind::kParse:
      return CS_ERR_PARSE;
    case ErrorKind::kSchema:
      return CS_ERR_SCHEMA;
    case ErrorKind::kOracleGuard:
      return CS_ERR_ORACLE_GUARD;
    case ErrorKind::kInternalConsistency:
      return CS_ERR_INTERNAL;
    case ErrorKind::kIo:
      return CS_ERR_IO;
  }
  return CS_ERR_INTERNAL;
}

struct BadArgument {
  std::string message;
};

template <typename F>
cs_status Guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return CS_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return StatusFor(e.kind());
  } catch (const BadArgument& e) {
    g_last_error = e.message;
    return CS_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return CS_ERR_INTERNAL;
  }
}

template <typename T>
T& Deref(T* p, const char* what) {
  if (p == nullptr) throw BadArgument{std::string(what) + " is null"};
  return *p;
}

SynthParams FromC(const cs_synth_params& c) {
  SynthParams p;
  p.n_internal = c.n_internal;
  p.n_external = c.n_external;
  p.n_groups = c.n_groups;
  p.steps = c.steps;
  p.tau_s = c.tau_s;
  p.p_detect = c.p_detect;
  p.p_move = c.p_move;
  p.n_locations = c.n_locations;
  p.friendship_within_group = c.friendship_within_group;
  p.interests_per_device = c.interests_per_device;
  return p;
}

Algorithm FromC(cs_algorithm a) {
  switch (a) {
    case CS_ALGORITHM_RANDOM:
      return Algorithm::kRandom;
    case CS_ALGORITHM_GREEDY:
      return Algorithm::kGreedy;
    case CS_ALGORITHM_HCONTEXT:
      return Algorithm::kHContext;
  }
  throw InvalidConfigError("unknown algorithm value " + std::to_string(static_cast<int>(a)));
}

BootstrapStrategy FromC(cs_bootstrap b) {
  switch (b) {
    case CS_BOOTSTRAP_RANDOM:
      return BootstrapStrategy::kRandom;
    case CS_BOOTSTRAP_FRIENDSHIP:
      return BootstrapStrategy::kFriendship;
    case CS_BOOTSTRAP_INTEREST:
      return BootstrapStrategy::kInterest;
  }
  throw InvalidConfigError("unknown bootstrap value " + std::to_string(static_cast<int>(b)));
}

cs_algorithm ToC(Algorithm a) { return static_cast<cs_algorithm>(static_cast<int>(a)); }
cs_bootstrap ToC(BootstrapStrategy b) { return static_cast<cs_bootstrap>(static_cast<int>(b)); }

SimConfig FromC(const cs_sim_config& c) {
  SimConfig s;
  s.ts_seconds = c.ts_seconds;
  s.td_seconds = c.td_seconds;
  const bool has_count = c.n_count != 0;
  const bool has_fraction = c.n_fraction != 0.0;
  if (has_count == has_fraction) {
    throw InvalidConfigError("set exactly one of the budget count or fraction");
  }
  if (has_count) {
    s.budget = BudgetCount{c.n_count};
  } else {
    s.budget = BudgetFraction{c.n_fraction};
  }
  s.k_fraction = c.k_fraction;
  s.rounds = c.rounds;
  s.algorithm = FromC(c.algorithm);
  s.bootstrap = FromC(c.bootstrap);
  s.seed = c.seed;
  s.start_time_s = c.start_time_s;
  return s;
}

cs_sim_config ToC(const SimConfig& s) {
  cs_sim_config c{};
  c.ts_seconds = s.ts_seconds;
  c.td_seconds = s.td_seconds;
  if (const auto* count = std::get_if<BudgetCount>(&s.budget)) {
    c.n_count = count->count;
  } else {
    c.n_fraction = std::get<BudgetFraction>(s.budget).fraction;
  }
  c.k_fraction = s.k_fraction;
  c.rounds = s.rounds;
  c.algorithm = ToC(s.algorithm);
  c.bootstrap = ToC(s.bootstrap);
  c.seed = s.seed;
  c.start_time_s = s.start_time_s;
  return c;
}

template <typename T>
std::vector<T> Axis(const T* values, std::size_t count, const char* name) {
  if (count == 0) return {};
  if (values == nullptr) throw BadArgument{std::string(name) + " is null with a non-zero count"};
  return std::vector<T>(values, values + count);
}

}  // namespace

extern "C" {

const char* cs_version(void) { return kArtifactVersion.data(); }

const char* cs_last_error(void) { return g_last_error.c_str(); }

const char* cs_status_name(cs_status status) {
  switch (status) {
    case CS_OK:
      return "ok";
    case CS_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case CS_ERR_INVALID_CONFIG:
      return "invalid config";
    case CS_ERR_PARSE:
      return "parse error";
    case CS_ERR_ORACLE_GUARD:
      return "oracle guard exceeded";
    case CS_ERR_SCHEMA:
      return "schema error";
    case CS_ERR_IO:
      return "i/o error";
    case CS_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

// The name tables are static string literals, so .data() is NUL-terminated.
const char* cs_algorithm_name(cs_algorithm algorithm) {
  try {
    return ToString(FromC(algorithm)).data();
  } catch (...) {
    return "unknown";
  }
}

const char* cs_bootstrap_name(cs_bootstrap bootstrap) {
  try {
    return ToString(FromC(bootstrap)).data();
  } catch (...) {
    return "unknown";
  }
}

cs_status cs_parse_algorithm(const char* name, cs_algorithm* out) {
  return Guard([&] {
    cs_algorithm a = ToC(ParseAlgorithm(&Deref(name, "name")));
    Deref(out, "out") = a;
  });
}

cs_status cs_parse_bootstrap(const char* name, cs_bootstrap* out) {
  return Guard([&] {
    cs_bootstrap b = ToC(ParseBootstrap(&Deref(name, "name")));
    Deref(out, "out") = b;
  });
}

void cs_synth_params_default(cs_synth_params* out) {
  if (out == nullptr) return;
  const SynthParams p;
  *out = cs_synth_params{p.n_internal, p.n_external, p.n_groups,
                         p.steps,      p.tau_s,      p.p_detect,
                         p.p_move,     p.n_locations, p.friendship_within_group,
                         p.interests_per_device};
}

void cs_sim_config_default(cs_sim_config* out) {
  if (out == nullptr) return;
  *out = ToC(SimConfig{});
}

cs_status cs_dataset_generate(const cs_synth_params* params, uint64_t seed, cs_dataset* out) {
  return Guard([&] {
    Deref(out, "out");
    const SynthParams p = FromC(Deref(params, "params"));
    SyntheticData data = GenerateSynthetic(p, seed);
    auto ds = std::make_unique<cs_dataset_s>(
        cs_dataset_s{std::move(data.trace), std::move(data.profiles), 0, {}, std::pair{p, seed}});
    *out = ds.release();
  });
}

cs_status cs_dataset_load(const char* contacts_path, const char* devices_path,
                          const char* friends_path, const char* interests_path, int64_t tau_s,
                          cs_dataset* out) {
  return Guard([&] {
    Deref(out, "out");
    namespace fs = std::filesystem;
    std::map<std::string, std::string> digests;
    auto read = [&](const char* path) {
      std::string text = ReadFile(path);
      digests[fs::path(path).filename().string()] = "sha256:" + Sha256Hex(text);
      return text;
    };
    const std::string contacts = read(&Deref(contacts_path, "contacts_path"));
    const std::string devices = read(&Deref(devices_path, "devices_path"));
    const std::string friends = friends_path ? read(friends_path) : std::string();
    const std::string interests = interests_path ? read(interests_path) : std::string();
    ContactTrace trace = ParseContacts(contacts, devices, tau_s);
    ProfileLoad load = ParseProfiles(friends, interests, trace.registry());
    auto ds = std::make_unique<cs_dataset_s>(cs_dataset_s{
        std::move(trace), std::move(load.profiles), load.dropped_rows, std::move(digests), {}});
    *out = ds.release();
  });
}

cs_status cs_dataset_write(cs_dataset dataset, const char* dir) {
  return Guard([&] {
    const cs_dataset_s& ds = Deref(dataset, "dataset");
    const std::filesystem::path root(&Deref(dir, "dir"));
    std::error_code ec;
    std::filesystem::create_directories(root, ec);
    if (ec) throw IoError("cannot create " + root.string() + ": " + ec.message());
    const std::vector<std::pair<std::string, std::string>> files = {
        {"contacts.csv", SerializeContacts(ds.trace)},
        {"devices.csv", SerializeDevices(ds.trace.registry())},
        {"friends.csv", SerializeFriends(ds.profiles)},
        {"interests.csv", SerializeInterests(ds.profiles)},
    };
    std::map<std::string, std::string> digests;
    for (const auto& [name, text] : files) {
      WriteFile(root / name, text);
      digests[name] = "sha256:" + Sha256Hex(text);
    }
    if (ds.synthesized) {
      WriteFile(root / "manifest.json",
                GenerateManifestJson(ds.synthesized->first, ds.synthesized->second, digests));
    }
  });
}

cs_status cs_dataset_info_get(cs_dataset dataset, cs_dataset_info* out) {
  return Guard([&] {
    const cs_dataset_s& ds = Deref(dataset, "dataset");
    cs_dataset_info info{};
    info.n_internal = ds.trace.registry().internal().size();
    info.n_external = ds.trace.registry().external().size();
    info.n_events = ds.trace.events().size();
    info.tau_s = ds.trace.tau_s();
    info.first_time_s = ds.trace.first_time_s();
    info.last_time_s = ds.trace.last_time_s();
    info.n_friendships = ds.profiles.friendships.size();
    info.dropped_profile_rows = ds.dropped_profile_rows;
    Deref(out, "out") = info;
  });
}

void cs_dataset_destroy(cs_dataset dataset) { delete dataset; }

cs_status cs_resolve(cs_dataset dataset, const cs_sim_config* config, int64_t* n, int64_t* k) {
  return Guard([&] {
    ResolvedConfig r = Resolve(FromC(Deref(config, "config")), Deref(dataset, "dataset").trace);
    Deref(n, "n") = r.n;
    Deref(k, "k") = r.k;
  });
}

cs_status cs_run(cs_dataset dataset, const cs_sim_config* config, cs_report* out) {
  return Guard([&] {
    Deref(out, "out");
    const cs_dataset_s& ds = Deref(dataset, "dataset");
    auto report = std::make_unique<cs_report_s>(
        cs_report_s{Run(ds.trace, ds.profiles, FromC(Deref(config, "config")))});
    *out = report.release();
  });
}

size_t cs_report_round_count(cs_report report) {
  return report == nullptr ? 0 : report->result.rounds.size();
}

int64_t cs_report_truncated_rounds(cs_report report) {
  return report == nullptr ? 0 : report->result.truncated_rounds;
}

cs_status cs_report_round(cs_report report, size_t index, cs_round* out) {
  return Guard([&] {
    const auto& rounds = Deref(report, "report").result.rounds;
    if (index >= rounds.size()) throw BadArgument{"round index out of range"};
    const RoundReport& r = rounds[index];
    Deref(out, "out") = cs_round{r.round_index,         r.start_s,          r.end_s,
                                 r.sensing_set.size(),  r.observed_edges,   r.truth_edges,
                                 r.coverage_ratio};
  });
}

cs_status cs_report_sensing_set(cs_report report, size_t index, uint32_t* ids, size_t capacity,
                                size_t* count) {
  return Guard([&] {
    const auto& rounds = Deref(report, "report").result.rounds;
    if (index >= rounds.size()) throw BadArgument{"round index out of range"};
    if (capacity > 0 && ids == nullptr) throw BadArgument{"ids is null with a non-zero capacity"};
    const DeviceSet& set = rounds[index].sensing_set;
    std::size_t i = 0;
    for (DeviceId id : set) {
      if (i >= capacity) break;
      ids[i++] = Raw(id);
    }
    Deref(count, "count") = set.size();
  });
}

cs_status cs_report_write_csv(cs_report report, const char* path) {
  return Guard(
      [&] { WriteFile(&Deref(path, "path"), ReportCsv(Deref(report, "report").result)); });
}

cs_status cs_report_write_manifest(cs_report report, cs_dataset dataset, const char* path) {
  return Guard([&] {
    const RunResult& r = Deref(report, "report").result;
    WriteFile(&Deref(path, "path"), RunManifestJson("run", r.resolved, r.truncated_rounds,
                                                    Deref(dataset, "dataset").input_digests));
  });
}

void cs_report_destroy(cs_report report) { delete report; }

cs_status cs_oracle_compare(cs_dataset dataset, const cs_sim_config* config,
                            cs_oracle_report* out) {
  return Guard([&] {
    Deref(out, "out");
    const cs_dataset_s& ds = Deref(dataset, "dataset");
    const SimConfig c = FromC(Deref(config, "config"));
    auto report = std::make_unique<cs_oracle_report_s>(
        cs_oracle_report_s{Resolve(c, ds.trace), CompareWithOracle(ds.trace, ds.profiles, c)});
    *out = report.release();
  });
}

size_t cs_oracle_report_row_count(cs_oracle_report report) {
  return report == nullptr ? 0 : report->rows.size();
}

cs_status cs_oracle_report_row(cs_oracle_report report, size_t index, cs_oracle_row* out) {
  return Guard([&] {
    const auto& rows = Deref(report, "report").rows;
    if (index >= rows.size()) throw BadArgument{"row index out of range"};
    const OracleRow& r = rows[index];
    Deref(out, "out") = cs_oracle_row{r.round_index,  r.n,            r.oracle_edges,
                                      r.random_edges, r.greedy_edges, r.hcontext_edges};
  });
}

cs_status cs_oracle_report_write_csv(cs_oracle_report report, const char* path) {
  return Guard([&] { WriteFile(&Deref(path, "path"), OracleCsv(Deref(report, "report").rows)); });
}

cs_status cs_oracle_report_write_manifest(cs_oracle_report report, cs_dataset dataset,
                                          const char* path) {
  return Guard([&] {
    WriteFile(&Deref(path, "path"),
              RunManifestJson("oracle", Deref(report, "report").resolved, 0,
                              Deref(dataset, "dataset").input_digests));
  });
}

void cs_oracle_report_destroy(cs_oracle_report report) { delete report; }

cs_status cs_sweep_run(cs_dataset dataset, const cs_sim_config* base, const cs_sweep_grid* grid,
                       cs_sweep* out) {
  return Guard([&] {
    Deref(out, "out");
    const cs_dataset_s& ds = Deref(dataset, "dataset");
    const cs_sweep_grid& g = Deref(grid, "grid");
    SweepGrid sweep;
    sweep.ts_seconds = Axis(g.ts_seconds, g.ts_count, "ts_seconds");
    for (double f : Axis(g.n_fractions, g.n_fraction_count, "n_fractions")) {
      sweep.budgets.push_back(BudgetFraction{f});
    }
    for (std::int64_t n : Axis(g.n_counts, g.n_count_count, "n_counts")) {
      sweep.budgets.push_back(BudgetCount{n});
    }
    for (cs_algorithm a : Axis(g.algorithms, g.algorithm_count, "algorithms")) {
      sweep.algorithms.push_back(FromC(a));
    }
    for (cs_bootstrap b : Axis(g.bootstraps, g.bootstrap_count, "bootstraps")) {
      sweep.bootstraps.push_back(FromC(b));
    }
    sweep.seeds = Axis(g.seeds, g.seed_count, "seeds");
    auto result = std::make_unique<cs_sweep_s>();
    result->points = RunSweep(ds.trace, ds.profiles, FromC(Deref(base, "base")), sweep);
    for (const SweepPoint& p : result->points) result->reports.push_back(cs_report_s{p.result});
    *out = result.release();
  });
}

size_t cs_sweep_point_count(cs_sweep sweep) { return sweep == nullptr ? 0 : sweep->points.size(); }

cs_status cs_sweep_point(cs_sweep sweep, size_t index, cs_sim_config* config, cs_report* report) {
  return Guard([&] {
    cs_sweep_s& s = Deref(sweep, "sweep");
    if (index >= s.points.size()) throw BadArgument{"point index out of range"};
    if (config != nullptr) *config = ToC(s.points[index].config);
    if (report != nullptr) *report = &s.reports[index];
  });
}

cs_status cs_sweep_write_csv(cs_sweep sweep, const char* path) {
  return Guard([&] { WriteFile(&Deref(path, "path"), SweepCsv(Deref(sweep, "sweep").points)); });
}

cs_status cs_sweep_write_manifest(cs_sweep sweep, cs_dataset dataset, const char* path) {
  return Guard([&] {
    WriteFile(&Deref(path, "path"), SweepManifestJson(Deref(sweep, "sweep").points,
                                                      Deref(dataset, "dataset").input_digests));
  });
}

void cs_sweep_destroy(cs_sweep sweep) { delete sweep; }

}  // extern "C"
