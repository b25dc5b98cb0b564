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

#include "core/contact_graph.hpp"

#include <algorithm>

#include "core/errors.hpp"

namespace crowdsense {

void IntervalGraph::AddNode(DeviceId id) { nodes_.insert(id); }

bool IntervalGraph::AddEdge(DeviceId a, DeviceId b) {
  if (!edges_.insert(DevicePair(a, b)).second) return false;
  nodes_.insert(a);
  nodes_.insert(b);
  adjacency_[a].insert(b);
  adjacency_[b].insert(a);
  return true;
}

const DeviceSet& IntervalGraph::Neighbors(DeviceId id) const {
  static const DeviceSet kEmpty;
  auto it = adjacency_.find(id);
  return it == adjacency_.end() ? kEmpty : it->second;
}

bool IntervalGraph::HasEdge(DeviceId a, DeviceId b) const {
  return a != b && edges_.contains(DevicePair(a, b));
}

IntervalGraph ObservedGraph(const ContactTrace& trace, std::int64_t start_s,
                            std::int64_t ts_seconds, const DeviceSet& sensing) {
  IntervalGraph graph(start_s, start_s + ts_seconds);
  for (DeviceId id : sensing) graph.AddNode(id);
  for (const ContactEvent& e : trace.Window(start_s, start_s + ts_seconds)) {
    if (sensing.contains(e.scanner)) graph.AddEdge(e.scanner, e.seen);
  }
  return graph;
}

IntervalGraph GroundTruthGraph(const ContactTrace& trace, std::int64_t start_s,
                               std::int64_t ts_seconds) {
  return ObservedGraph(trace, start_s, ts_seconds, trace.registry().internal());
}

double CoverageRatio(const IntervalGraph& observed, const IntervalGraph& truth) {
  if (!std::includes(truth.edges().begin(), truth.edges().end(), observed.edges().begin(),
                     observed.edges().end())) {
    throw InternalConsistencyError("observed graph has edges missing from ground truth");
  }
  if (truth.edges().empty()) return 1.0;
  return static_cast<double>(observed.edges().size()) / static_cast<double>(truth.edges().size());
}

std::size_t CoveredEdgeCount(const IntervalGraph& graph, const DeviceSet& chosen) {
  return static_cast<std::size_t>(
      std::count_if(graph.edges().begin(), graph.edges().end(), [&](const DevicePair& e) {
        return chosen.contains(e.first()) || chosen.contains(e.second());
      }));
}

}  // namespace crowdsense
