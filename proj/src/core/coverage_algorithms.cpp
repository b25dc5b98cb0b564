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

#include "core/coverage_algorithms.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace crowdsense {
namespace {

std::size_t Target(const DeviceSet& v_in, std::size_t n) { return std::min(n, v_in.size()); }

// Remaining-degree bookkeeping shared by the random and greedy selectors.
// Selecting a node removes all of its incident edges.
class EdgeRemoval {
 public:
  EdgeRemoval(const IntervalGraph& graph, const DeviceSet& v_in) : graph_(graph), v_in_(v_in) {
    for (DeviceId id : v_in) degree_[id] = graph.Degree(id);
  }

  void Select(DeviceId u) {
    selected_.insert(u);
    degree_[u] = 0;
    for (DeviceId w : graph_.Neighbors(u)) {
      auto it = degree_.find(w);
      if (it != degree_.end() && !selected_.contains(w)) --it->second;
    }
  }

  const DeviceSet& selected() const { return selected_; }
  const std::map<DeviceId, std::size_t>& degree() const { return degree_; }

  std::vector<DeviceId> Unselected() const {
    std::vector<DeviceId> out;
    for (DeviceId id : v_in_) {
      if (!selected_.contains(id)) out.push_back(id);
    }
    return out;
  }

 private:
  const IntervalGraph& graph_;
  const DeviceSet& v_in_;
  DeviceSet selected_;
  std::map<DeviceId, std::size_t> degree_;
};

}  // namespace

ObservabilityMap Observability(const IntervalGraph& graph, const DeviceSet& sensing) {
  ObservabilityMap out;
  for (DeviceId v : graph.nodes()) {
    if (sensing.contains(v)) continue;
    std::int64_t sigma = 0;
    for (DeviceId u : graph.Neighbors(v)) sigma += sensing.contains(u) ? 1 : 0;
    out[v] = sigma;
  }
  return out;
}

UtilityMap CoverageUtility(const IntervalGraph& graph, const DeviceSet& sensing,
                           const ObservabilityMap& observability) {
  UtilityMap out;
  for (DeviceId u : sensing) {
    double delta = 0.0;
    for (DeviceId v : graph.Neighbors(u)) {  // ascending id
      if (sensing.contains(v)) continue;
      auto it = observability.find(v);
      if (it == observability.end() || it->second <= 0) {
        throw InternalConsistencyError("neighbour " + std::to_string(Raw(v)) + " of sensing node " +
                                       std::to_string(Raw(u)) + " has zero observability");
      }
      delta += 1.0 / static_cast<double>(it->second);
    }
    out[u] = delta;
  }
  return out;
}

DeviceSet SelectRandom(const IntervalGraph& graph, const DeviceSet& v_in, std::size_t n, Rng& rng) {
  const std::size_t target = Target(v_in, n);
  EdgeRemoval state(graph, v_in);
  while (state.selected().size() < target) {
    std::vector<DeviceId> eligible;
    for (auto [id, deg] : state.degree()) {
      if (deg > 0) eligible.push_back(id);
    }
    if (eligible.empty()) break;
    state.Select(eligible[rng.UniformIndex(eligible.size())]);
  }
  DeviceSet out = state.selected();
  std::vector<DeviceId> rest = state.Unselected();
  while (out.size() < target) out.insert(rng.TakeOne(rest));
  return out;
}

DeviceSet SelectGreedy(const IntervalGraph& graph, const DeviceSet& v_in, std::size_t n) {
  const std::size_t target = Target(v_in, n);
  EdgeRemoval state(graph, v_in);
  while (state.selected().size() < target) {
    DeviceId best{};
    std::size_t best_degree = 0;
    for (auto [id, deg] : state.degree()) {  // ascending id, so strict > keeps the smallest
      if (deg > best_degree) {
        best = id;
        best_degree = deg;
      }
    }
    if (best_degree == 0) break;
    state.Select(best);
  }
  DeviceSet out = state.selected();
  for (DeviceId id : state.Unselected()) {
    if (out.size() >= target) break;
    out.insert(id);
  }
  return out;
}

DeviceSet SelectHContext(const IntervalGraph& graph, const DeviceSet& v_in,
                         const DeviceSet& prev_sensing, std::size_t n, std::size_t k, Rng& rng,
                         KeepOrder order) {
  const std::size_t target = Target(v_in, n);
  const ObservabilityMap sigma = Observability(graph, prev_sensing);
  const UtilityMap delta = CoverageUtility(graph, prev_sensing, sigma);

  std::vector<DeviceId> kept(prev_sensing.begin(), prev_sensing.end());
  std::stable_sort(kept.begin(), kept.end(), [&](DeviceId a, DeviceId b) {
    return order == KeepOrder::kHighestUtility ? delta.at(a) > delta.at(b)
                                               : delta.at(a) < delta.at(b);
  });
  kept.resize(std::min({kept.size(), k, target}));
  DeviceSet out(kept.begin(), kept.end());

  std::vector<std::pair<std::int64_t, DeviceId>> candidates;
  for (DeviceId v : v_in) {
    if (prev_sensing.contains(v)) continue;
    auto it = sigma.find(v);
    if (it != sigma.end() && it->second > 0) candidates.emplace_back(it->second, v);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (const auto& [s, v] : candidates) {
    if (out.size() >= target) break;
    out.insert(v);
  }

  std::vector<DeviceId> rest;
  for (DeviceId id : v_in) {
    if (!out.contains(id)) rest.push_back(id);
  }
  while (out.size() < target) out.insert(rng.TakeOne(rest));
  return out;
}

std::uint64_t BinomialSaturating(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  // result * (n - i) / (i + 1) stays exact because C(n, i + 1) is an integer.
  unsigned __int128 result = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    result = result * (n - i) / (i + 1);
    if (result > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(result);
}

OracleResult SelectOptimalBruteforce(const IntervalGraph& truth, const DeviceSet& v_in,
                                     std::size_t n, std::uint64_t subset_limit) {
  const std::size_t target = Target(v_in, n);
  std::vector<DeviceId> relevant;
  for (DeviceId id : v_in) {
    if (truth.Degree(id) > 0) relevant.push_back(id);
  }

  OracleResult best;
  if (relevant.size() <= target) {
    best.sensing.insert(relevant.begin(), relevant.end());
    for (DeviceId id : v_in) {
      if (best.sensing.size() >= target) break;
      best.sensing.insert(id);
    }
    best.covered_edges = CoveredEdgeCount(truth, best.sensing);
    return best;
  }

  const std::uint64_t subsets = BinomialSaturating(relevant.size(), target);
  if (subsets > subset_limit) {
    throw OracleGuardError("oracle would enumerate " +
                           (subsets == UINT64_MAX ? std::string("more than 2^64")
                                                  : std::to_string(subsets)) +
                           " subsets (limit " + std::to_string(subset_limit) + ")");
  }

  // Index-space adjacency restricted to relevant nodes; edges to externals
  // only ever count through the degree term.
  const std::size_t r = relevant.size();
  std::map<DeviceId, std::size_t> index;
  for (std::size_t i = 0; i < r; ++i) index[relevant[i]] = i;
  std::vector<std::size_t> degree(r);
  std::vector<std::vector<std::size_t>> adj(r);
  for (std::size_t i = 0; i < r; ++i) {
    degree[i] = truth.Degree(relevant[i]);
    for (DeviceId w : truth.Neighbors(relevant[i])) {
      auto it = index.find(w);
      if (it != index.end()) adj[i].push_back(it->second);
    }
  }

  // chosen_neighbours[i] counts chosen nodes adjacent to i, so adding i
  // covers degree[i] - chosen_neighbours[i] new edges.
  std::vector<std::size_t> chosen_neighbours(r, 0);
  std::vector<std::size_t> stack;
  std::vector<std::size_t> best_stack;
  std::size_t best_count = 0;
  bool have_best = false;

  auto recurse = [&](auto&& self, std::size_t from, std::size_t covered) -> void {
    if (stack.size() == target) {
      if (!have_best || covered > best_count) {
        best_count = covered;
        best_stack = stack;
        have_best = true;
      }
      return;
    }
    const std::size_t need = target - stack.size();
    for (std::size_t i = from; i + need <= r; ++i) {
      const std::size_t gain = degree[i] - chosen_neighbours[i];
      stack.push_back(i);
      for (std::size_t w : adj[i]) ++chosen_neighbours[w];
      self(self, i + 1, covered + gain);
      for (std::size_t w : adj[i]) --chosen_neighbours[w];
      stack.pop_back();
    }
  };
  recurse(recurse, 0, 0);

  for (std::size_t i : best_stack) best.sensing.insert(relevant[i]);
  best.covered_edges = best_count;
  return best;
}

}  // namespace crowdsense
