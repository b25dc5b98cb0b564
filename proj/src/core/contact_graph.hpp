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

#ifndef CROWDSENSE_CORE_CONTACT_GRAPH_HPP_
#define CROWDSENSE_CORE_CONTACT_GRAPH_HPP_

#include <cstdint>
#include <map>
#include <set>

#include "core/trace_model.hpp"

namespace crowdsense {

// Undirected contact graph for the half-open interval [start_s, end_s).
// Repeated scans of the same pair, in either direction, collapse into one
// edge.
class IntervalGraph {
 public:
  IntervalGraph(std::int64_t start_s, std::int64_t end_s) : start_s_(start_s), end_s_(end_s) {}

  void AddNode(DeviceId id);
  // Returns false if the edge was already present.
  bool AddEdge(DeviceId a, DeviceId b);

  std::int64_t start_s() const { return start_s_; }
  std::int64_t end_s() const { return end_s_; }
  const DeviceSet& nodes() const { return nodes_; }
  const std::set<DevicePair>& edges() const { return edges_; }
  // Empty set for unknown nodes.
  const DeviceSet& Neighbors(DeviceId id) const;
  std::size_t Degree(DeviceId id) const { return Neighbors(id).size(); }
  bool HasEdge(DeviceId a, DeviceId b) const;

 private:
  std::int64_t start_s_;
  std::int64_t end_s_;
  DeviceSet nodes_;
  std::set<DevicePair> edges_;
  std::map<DeviceId, DeviceSet> adjacency_;
};

// Contacts reported by `sensing` scanners during [start_s, start_s + ts_seconds).
// Sensing devices are nodes even when they saw nothing.
IntervalGraph ObservedGraph(const ContactTrace& trace, std::int64_t start_s,
                            std::int64_t ts_seconds, const DeviceSet& sensing);

// What the whole internal population would have reported.
IntervalGraph GroundTruthGraph(const ContactTrace& trace, std::int64_t start_s,
                               std::int64_t ts_seconds);

// |observed.edges| / |truth.edges|, or 1.0 for an empty truth graph. Throws
// InternalConsistencyError when observed is not a subgraph of truth.
double CoverageRatio(const IntervalGraph& observed, const IntervalGraph& truth);

// Number of graph edges with at least one endpoint in `chosen`.
std::size_t CoveredEdgeCount(const IntervalGraph& graph, const DeviceSet& chosen);

}  // namespace crowdsense

#endif  // CROWDSENSE_CORE_CONTACT_GRAPH_HPP_
