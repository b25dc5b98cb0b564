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

#include "core/simulator.hpp"

#include <algorithm>
#include <future>
#include <string>
#include <thread>
#include <utility>

#include "core/bootstrap.hpp"
#include "core/coverage_algorithms.hpp"
#include "core/errors.hpp"
#include "core/rng.hpp"

namespace crowdsense {

RunResult Run(const ContactTrace& trace, const SocialProfiles& profiles, const SimConfig& config,
              const RunHooks& hooks) {
  if (trace.empty()) throw InvalidConfigError("trace has no events");
  RunResult result{Resolve(config, trace), {}, 0};
  if (config.start_time_s < 0 || config.start_time_s > trace.last_time_s()) {
    throw InvalidConfigError("start time " + std::to_string(config.start_time_s) +
                             " outside trace span [0, " + std::to_string(trace.last_time_s()) + "]");
  }
  const auto n = static_cast<std::size_t>(result.resolved.n);
  const auto k = static_cast<std::size_t>(result.resolved.k);
  const DeviceSet& v_in = trace.registry().internal();

  Rng bootstrap_rng = Rng::ForStream(config.seed, RngStream::kBootstrap);
  Rng selection_rng = Rng::ForStream(config.seed, RngStream::kSelection);

  DeviceSet sensing;
  IntervalGraph previous(0, 0);
  for (std::int64_t r = 0; r < config.rounds; ++r) {
    const std::int64_t start = config.start_time_s + r * config.ts_seconds;
    if (start > trace.last_time_s()) {
      result.truncated_rounds = config.rounds - r;
      break;
    }
    if (r == 0) {
      sensing = RunBootstrap(config.bootstrap, profiles, v_in, n, bootstrap_rng);
    } else {
      if (hooks.on_selector_input) hooks.on_selector_input(r, previous);
      switch (config.algorithm) {
        case Algorithm::kRandom:
          sensing = SelectRandom(previous, v_in, n, selection_rng);
          break;
        case Algorithm::kGreedy:
          sensing = SelectGreedy(previous, v_in, n);
          break;
        case Algorithm::kHContext:
          sensing = SelectHContext(previous, v_in, sensing, n, k, selection_rng);
          break;
      }
    }

    IntervalGraph observed = ObservedGraph(trace, start, config.ts_seconds, sensing);
    IntervalGraph truth = GroundTruthGraph(trace, start, config.ts_seconds);
    if (hooks.transform_truth) truth = hooks.transform_truth(r, std::move(truth));

    RoundReport report;
    report.round_index = r;
    report.start_s = start;
    report.end_s = start + config.ts_seconds;
    report.sensing_set = sensing;
    report.observed_edges = observed.edges().size();
    report.truth_edges = truth.edges().size();
    report.coverage_ratio = CoverageRatio(observed, truth);
    report.algorithm = config.algorithm;
    report.bootstrap = config.bootstrap;
    report.seed = config.seed;
    result.rounds.push_back(std::move(report));
    previous = std::move(observed);
  }
  return result;
}

std::vector<SimConfig> ExpandGrid(const SimConfig& base, const SweepGrid& grid) {
  auto axis = [](const auto& values, auto fallback) {
    using T = typename std::decay_t<decltype(values)>::value_type;
    return values.empty() ? std::vector<T>{fallback} : values;
  };
  std::vector<SimConfig> out;
  for (std::int64_t ts : axis(grid.ts_seconds, base.ts_seconds)) {
    for (const BudgetSpec& budget : axis(grid.budgets, base.budget)) {
      for (Algorithm algorithm : axis(grid.algorithms, base.algorithm)) {
        for (BootstrapStrategy bootstrap : axis(grid.bootstraps, base.bootstrap)) {
          for (std::uint64_t seed : axis(grid.seeds, base.seed)) {
            SimConfig c = base;
            c.ts_seconds = ts;
            c.budget = budget;
            c.algorithm = algorithm;
            c.bootstrap = bootstrap;
            c.seed = seed;
            out.push_back(c);
          }
        }
      }
    }
  }
  return out;
}

std::vector<SweepPoint> RunSweep(const ContactTrace& trace, const SocialProfiles& profiles,
                                 const SimConfig& base, const SweepGrid& grid) {
  const std::vector<SimConfig> configs = ExpandGrid(base, grid);
  std::vector<SweepPoint> points(configs.size());
  const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t begin = 0; begin < configs.size(); begin += width) {
    const std::size_t end = std::min(configs.size(), begin + width);
    std::vector<std::future<RunResult>> batch;
    for (std::size_t i = begin; i < end; ++i) {
      batch.push_back(std::async(std::launch::async, [&, i] { return Run(trace, profiles, configs[i]); }));
    }
    for (std::size_t i = begin; i < end; ++i) {
      points[i] = SweepPoint{configs[i], batch[i - begin].get()};
    }
  }
  return points;
}

std::vector<OracleRow> CompareWithOracle(const ContactTrace& trace, const SocialProfiles& profiles,
                                         const SimConfig& config) {
  std::vector<RunResult> runs;
  for (Algorithm a : {Algorithm::kRandom, Algorithm::kGreedy, Algorithm::kHContext}) {
    SimConfig c = config;
    c.algorithm = a;
    runs.push_back(Run(trace, profiles, c));
  }
  const DeviceSet& v_in = trace.registry().internal();
  const std::int64_t n = runs.front().resolved.n;
  std::vector<OracleRow> rows;
  for (std::size_t r = 0; r < runs.front().rounds.size(); ++r) {
    const RoundReport& round = runs.front().rounds[r];
    const IntervalGraph truth = GroundTruthGraph(trace, round.start_s, config.ts_seconds);
    OracleRow row;
    row.round_index = round.round_index;
    row.n = n;
    row.oracle_edges = SelectOptimalBruteforce(truth, v_in, static_cast<std::size_t>(n)).covered_edges;
    row.random_edges = CoveredEdgeCount(truth, runs[0].rounds[r].sensing_set);
    row.greedy_edges = CoveredEdgeCount(truth, runs[1].rounds[r].sensing_set);
    row.hcontext_edges = CoveredEdgeCount(truth, runs[2].rounds[r].sensing_set);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace crowdsense
