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

// Policies that pick the next interval's sensing set from the contact graph
// the current sensing set reported, and an exhaustive hindsight oracle.
//
// Every selector returns exactly min(n, |v_in|) internal devices. Ties are
// always broken towards the smallest DeviceId.

#ifndef CROWDSENSE_CORE_COVERAGE_ALGORITHMS_HPP_
#define CROWDSENSE_CORE_COVERAGE_ALGORITHMS_HPP_

#include <cstddef>
#include <cstdint>
#include <map>

#include "core/contact_graph.hpp"
#include "core/rng.hpp"
#include "core/trace_model.hpp"

namespace crowdsense {

// Number of sensing neighbours of every non-sensing graph node.
using ObservabilityMap = std::map<DeviceId, std::int64_t>;
// Sum of 1/observability over each sensing node's non-sensing neighbours.
using UtilityMap = std::map<DeviceId, double>;

ObservabilityMap Observability(const IntervalGraph& graph, const DeviceSet& sensing);

// Summation runs in ascending neighbour id. Throws InternalConsistencyError if
// a non-sensing neighbour has zero observability.
UtilityMap CoverageUtility(const IntervalGraph& graph, const DeviceSet& sensing,
                           const ObservabilityMap& observability);

// Uniform draws among internal nodes that still have an uncovered edge; the
// chosen node's edges are removed after each draw. Once no such node is
// left, the budget is topped up uniformly from the remaining internal nodes.
DeviceSet SelectRandom(const IntervalGraph& graph, const DeviceSet& v_in, std::size_t n, Rng& rng);

// Highest remaining degree first, with the same edge removal. Zero-degree
// leftovers fill the budget in ascending id order.
DeviceSet SelectGreedy(const IntervalGraph& graph, const DeviceSet& v_in, std::size_t n);

// Which members of the previous sensing set survive re-selection. The
// context-aware rule keeps the highest-utility ones; kLowestUtility exists to
// compare against the opposite reading.
enum class KeepOrder { kHighestUtility, kLowestUtility };

// Keeps k members of `prev_sensing` ranked by coverage utility and fills the
// other slots with internal non-sensing nodes ranked by observability
// (descending). When no candidate with positive observability is left, the
// rest is drawn uniformly from the remaining internal nodes.
DeviceSet SelectHContext(const IntervalGraph& graph, const DeviceSet& v_in,
                         const DeviceSet& prev_sensing, std::size_t n, std::size_t k, Rng& rng,
                         KeepOrder order = KeepOrder::kHighestUtility);

inline constexpr std::uint64_t kOracleSubsetLimit = 10'000'000;

struct OracleResult {
  DeviceSet sensing;
  std::size_t covered_edges = 0;
};

// Maximizes the number of `truth` edges incident to an n-subset of v_in by
// enumerating subsets of the internal nodes that have at least one edge.
// Among equal covers, the lexicographically smallest enumerated subset wins.
// Throws OracleGuardError when more than kOracleSubsetLimit subsets would
// be visited.
OracleResult SelectOptimalBruteforce(const IntervalGraph& truth, const DeviceSet& v_in,
                                     std::size_t n,
                                     std::uint64_t subset_limit = kOracleSubsetLimit);

// C(n, k), saturating at UINT64_MAX.
std::uint64_t BinomialSaturating(std::uint64_t n, std::uint64_t k);

}  // namespace crowdsense

#endif  // CROWDSENSE_CORE_COVERAGE_ALGORITHMS_HPP_
