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

// The two-stage round engine. Round 0 senses with the bootstrap set; every
// later round senses with the set the selector derives from the previous
// round's observed graph. Ground truth feeds the coverage metric only.
//
// Rounds are back-to-back windows of ts_seconds starting at start_time_s.
// The decision window is treated as instantaneous and loss-free.

#ifndef CROWDSENSE_CORE_SIMULATOR_HPP_
#define CROWDSENSE_CORE_SIMULATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "core/contact_graph.hpp"
#include "core/trace_model.hpp"

namespace crowdsense {

struct RoundReport {
  std::int64_t round_index = 0;
  std::int64_t start_s = 0;
  std::int64_t end_s = 0;
  DeviceSet sensing_set;
  std::size_t observed_edges = 0;
  std::size_t truth_edges = 0;
  double coverage_ratio = 1.0;
  Algorithm algorithm = Algorithm::kHContext;
  BootstrapStrategy bootstrap = BootstrapStrategy::kRandom;
  std::uint64_t seed = 0;
};

struct RunResult {
  ResolvedConfig resolved;
  std::vector<RoundReport> rounds;
  // Requested rounds that started after the last trace event and were dropped.
  std::int64_t truncated_rounds = 0;
};

// Test instrumentation.
struct RunHooks {
  // Sees the graph handed to the selector before round `round` (>= 1).
  std::function<void(std::int64_t round, const IntervalGraph& selector_input)> on_selector_input;
  // Replaces the ground-truth graph of a round before it is scored. The
  // result must still contain the observed edges.
  std::function<IntervalGraph(std::int64_t round, IntervalGraph truth)> transform_truth;
};

// Throws InvalidConfigError for an empty trace, a start time outside the
// trace span, or an invalid config.
RunResult Run(const ContactTrace& trace, const SocialProfiles& profiles, const SimConfig& config,
              const RunHooks& hooks = {});

// Axes left empty take the base config's value.
struct SweepGrid {
  std::vector<std::int64_t> ts_seconds;
  std::vector<BudgetSpec> budgets;
  std::vector<Algorithm> algorithms;
  std::vector<BootstrapStrategy> bootstraps;
  std::vector<std::uint64_t> seeds;
};

struct SweepPoint {
  SimConfig config;
  RunResult result;
};

// One run per grid point, enumerated with ts outermost and seed innermost.
// Points run concurrently; the output order is the enumeration order.
std::vector<SweepPoint> RunSweep(const ContactTrace& trace, const SocialProfiles& profiles,
                                 const SimConfig& base, const SweepGrid& grid);

std::vector<SimConfig> ExpandGrid(const SimConfig& base, const SweepGrid& grid);

struct OracleRow {
  std::int64_t round_index = 0;
  std::int64_t n = 0;
  std::size_t oracle_edges = 0;
  std::size_t random_edges = 0;
  std::size_t greedy_edges = 0;
  std::size_t hcontext_edges = 0;
};

// Runs the configuration once per selector (the configured algorithm is
// ignored) and scores each round's sensing set by the ground-truth edges it
// touches, next to the hindsight optimum for the same round.
std::vector<OracleRow> CompareWithOracle(const ContactTrace& trace, const SocialProfiles& profiles,
                                         const SimConfig& config);

}  // namespace crowdsense

#endif  // CROWDSENSE_CORE_SIMULATOR_HPP_
