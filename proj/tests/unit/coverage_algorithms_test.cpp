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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "core/errors.hpp"
#include "test_support.hpp"

namespace crowdsense {
namespace {

using testing::D;
using testing::Ids;
using testing::MakeGraph;
using testing::Range;

constexpr double kTol = 1e-9;

// ---- observability / utility ----

TEST(ObservabilityTest, SharedNeighbour) {
  // s1=1, s2=2, x=10.
  const IntervalGraph g = MakeGraph({{1, 10}, {2, 10}});
  const ObservabilityMap sigma = Observability(g, Ids({1, 2}));
  EXPECT_EQ(sigma.at(D(10)), 2);
  EXPECT_FALSE(sigma.contains(D(1)));
  EXPECT_FALSE(sigma.contains(D(2)));
}

TEST(ObservabilityTest, UnobservedNodeIsZero) {
  const IntervalGraph g = MakeGraph({{1, 10}}, {11});
  EXPECT_EQ(Observability(g, Ids({1})).at(D(11)), 0);
}

TEST(CoverageUtilityTest, OneAndAHalf) {
  // u=1 sees v1=10 alone and shares v2=11 with w=2.
  const IntervalGraph g = MakeGraph({{1, 10}, {1, 11}, {2, 11}});
  const DeviceSet sensing = Ids({1, 2});
  const UtilityMap delta = CoverageUtility(g, sensing, Observability(g, sensing));
  EXPECT_NEAR(delta.at(D(1)), 1.5, kTol);
  EXPECT_NEAR(delta.at(D(2)), 0.5, kTol);
}

TEST(CoverageUtilityTest, SensingNeighboursAndIsolatedNodesScoreZero) {
  const IntervalGraph g = MakeGraph({{1, 2}}, {3});
  const DeviceSet sensing = Ids({1, 2, 3});
  const UtilityMap delta = CoverageUtility(g, sensing, Observability(g, sensing));
  EXPECT_EQ(delta.at(D(1)), 0.0);
  EXPECT_EQ(delta.at(D(2)), 0.0);
  EXPECT_EQ(delta.at(D(3)), 0.0);
}

TEST(CoverageUtilityTest, ZeroObservabilityNeighbourIsInconsistent) {
  const IntervalGraph g = MakeGraph({{1, 10}});
  ObservabilityMap forged = {{D(10), 0}};
  EXPECT_THROW(CoverageUtility(g, Ids({1}), forged), InternalConsistencyError);
}

// Sum of utilities equals the number of non-sensing nodes next to the
// sensing set, on observed graphs of random traces.
class ConservationTest : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(ConservationTest, SumOfUtilitiesCountsObservedNodes) {
  Rng rng(1000 + GetParam());
  const std::uint32_t ni = 2 + static_cast<std::uint32_t>(rng.UniformIndex(15));
  const std::uint32_t ne = static_cast<std::uint32_t>(rng.UniformIndex(30));
  const ContactTrace t = testing::RandomTrace(rng, ni, ne, 10 + rng.UniformIndex(400), 100);
  DeviceSet sensing;
  for (DeviceId id : t.registry().internal()) {
    if (rng.Bernoulli(0.4)) sensing.insert(id);
  }
  const IntervalGraph g = ObservedGraph(t, 0, 100, sensing);
  const ObservabilityMap sigma = Observability(g, sensing);
  const UtilityMap delta = CoverageUtility(g, sensing, sigma);

  std::set<DeviceId> adjacent;
  for (const DevicePair& e : g.edges()) {
    if (sensing.contains(e.first()) && !sensing.contains(e.second())) adjacent.insert(e.second());
    if (sensing.contains(e.second()) && !sensing.contains(e.first())) adjacent.insert(e.first());
  }
  double sum = 0.0;
  for (const auto& [u, d] : delta) sum += d;
  EXPECT_NEAR(sum, static_cast<double>(adjacent.size()), kTol);

  // sigma from a plain edge scan.
  for (DeviceId v : g.nodes()) {
    if (sensing.contains(v)) continue;
    std::int64_t count = 0;
    for (const DevicePair& e : g.edges()) {
      if (e.Contains(v) && sensing.contains(e.Other(v))) ++count;
    }
    ASSERT_EQ(sigma.at(v), count);
    ASSERT_GE(count, 1) << "observed graphs only hold observed nodes";
  }
  EXPECT_EQ(delta.size(), sensing.size());
}

INSTANTIATE_TEST_SUITE_P(RandomGraphs, ConservationTest, ::testing::Range<std::uint64_t>(0, 150));

// ---- random ----

TEST(SelectRandomTest, OnlyEligibleNode) {
  const IntervalGraph g = MakeGraph({{1, 10}});
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    EXPECT_EQ(SelectRandom(g, Ids({1, 2, 3, 4}), 1, rng), Ids({1}));
  }
}

TEST(SelectRandomTest, FullBudgetTakesEverything) {
  Rng rng(1);
  const DeviceSet v_in = Range(0, 9);
  EXPECT_EQ(SelectRandom(MakeGraph({{1, 2}, {3, 20}}), v_in, 9, rng), v_in);
  EXPECT_EQ(SelectRandom(MakeGraph({{1, 2}}), v_in, 50, rng), v_in);
}

TEST(SelectRandomTest, SeededDeterminism) {
  Rng trace_rng(2);
  const ContactTrace t = testing::RandomTrace(trace_rng, 12, 10, 200, 100);
  const IntervalGraph g = GroundTruthGraph(t, 0, 100);
  Rng a(42), b(42);
  EXPECT_EQ(SelectRandom(g, t.registry().internal(), 5, a),
            SelectRandom(g, t.registry().internal(), 5, b));
}

TEST(SelectRandomTest, UniformOverEligible) {
  // Five internal leaves each with one external contact, plus two idle nodes.
  const IntervalGraph g = MakeGraph({{0, 10}, {1, 11}, {2, 12}, {3, 13}, {4, 14}});
  Rng rng(77);
  std::map<DeviceId, int> hits;
  constexpr int kDraws = 20000;
  for (int i = 0; i < kDraws; ++i) ++hits[*SelectRandom(g, Range(0, 7), 1, rng).begin()];
  ASSERT_EQ(hits.size(), 5u);
  for (const auto& [id, count] : hits) EXPECT_NEAR(count, kDraws / 5, 400) << Raw(id);
}

// ---- greedy ----

TEST(SelectGreedyTest, StarCentre) {
  const IntervalGraph g = MakeGraph({{5, 1}, {5, 2}, {5, 3}, {5, 10}});
  EXPECT_EQ(SelectGreedy(g, Ids({1, 2, 3, 5}), 1), Ids({5}));
}

TEST(SelectGreedyTest, PathPicksMiddle) {
  // a-b-c-d as 1-2-3-4.
  const IntervalGraph g = MakeGraph({{1, 2}, {2, 3}, {3, 4}});
  EXPECT_EQ(SelectGreedy(g, Ids({1, 2, 3, 4}), 2), Ids({2, 3}));
}

TEST(SelectGreedyTest, TriangleTieGoesToSmallestId) {
  const IntervalGraph g = MakeGraph({{1, 2}, {2, 3}, {1, 3}});
  EXPECT_EQ(SelectGreedy(g, Ids({1, 2, 3}), 1), Ids({1}));
}

TEST(SelectGreedyTest, ZeroDegreeFillInIdOrder) {
  const IntervalGraph g = MakeGraph({{7, 20}});
  EXPECT_EQ(SelectGreedy(g, Ids({2, 4, 7, 9}), 3), Ids({2, 4, 7}));
}

// Straightforward re-implementation over an adjacency map.
DeviceSet ReferenceGreedy(const IntervalGraph& g, const DeviceSet& v_in, std::size_t n) {
  std::map<DeviceId, std::set<DeviceId>> adj;
  for (const DevicePair& e : g.edges()) {
    adj[e.first()].insert(e.second());
    adj[e.second()].insert(e.first());
  }
  DeviceSet chosen;
  while (chosen.size() < std::min(n, v_in.size())) {
    std::optional<DeviceId> best;
    std::size_t best_degree = 0;
    for (DeviceId u : v_in) {
      if (chosen.contains(u)) continue;
      if (adj[u].size() > best_degree) {
        best = u;
        best_degree = adj[u].size();
      }
    }
    if (!best) break;
    chosen.insert(*best);
    for (DeviceId w : adj[*best]) adj[w].erase(*best);
    adj[*best].clear();
  }
  for (DeviceId u : v_in) {
    if (chosen.size() >= std::min(n, v_in.size())) break;
    chosen.insert(u);
  }
  return chosen;
}

// ---- hcontext ----

// s1=1, s2=2 sensing; p=3 seen by both, q=4 seen by s1 only; externals 10, 11.
// Delta(s1) = 1/2 + 1 + 1 + 1 = 3.5, Delta(s2) = 1/2.
IntervalGraph KeepReplaceFixture() {
  return MakeGraph({{1, 3}, {2, 3}, {1, 4}, {1, 10}, {1, 11}});
}

TEST(SelectHContextTest, KeepsHighestUtilityAndAddsMostObservable) {
  const IntervalGraph g = KeepReplaceFixture();
  const DeviceSet prev = Ids({1, 2});
  const UtilityMap delta = CoverageUtility(g, prev, Observability(g, prev));
  ASSERT_NEAR(delta.at(D(1)), 3.5, kTol);
  ASSERT_NEAR(delta.at(D(2)), 0.5, kTol);
  Rng rng(0);
  EXPECT_EQ(SelectHContext(g, Ids({1, 2, 3, 4}), prev, 2, 1, rng), Ids({1, 3}));
}

TEST(SelectHContextTest, LowestUtilityReadingKeepsTheOther) {
  Rng rng(0);
  EXPECT_EQ(SelectHContext(KeepReplaceFixture(), Ids({1, 2, 3, 4}), Ids({1, 2}), 2, 1, rng,
                           KeepOrder::kLowestUtility),
            Ids({2, 3}));
}

TEST(SelectHContextTest, ObservabilityOrderForWiderFill) {
  Rng rng(0);
  // n=3, k=1: keep s1, then p (sigma 2), then q (sigma 1).
  EXPECT_EQ(SelectHContext(KeepReplaceFixture(), Ids({1, 2, 3, 4, 5}), Ids({1, 2}), 3, 1, rng),
            Ids({1, 3, 4}));
}

TEST(SelectHContextTest, KeepEqualsBudgetKeepsPrevious) {
  Rng rng(0);
  EXPECT_EQ(SelectHContext(KeepReplaceFixture(), Ids({1, 2, 3, 4}), Ids({1, 2}), 2, 2, rng),
            Ids({1, 2}));
}

TEST(SelectHContextTest, KeepLargerThanPreviousKeepsAll) {
  // Seen from {2} alone only p is observable; the last slot is a random fill.
  Rng rng(0);
  const DeviceSet out =
      SelectHContext(KeepReplaceFixture(), Ids({1, 2, 3, 4, 5}), Ids({2}), 3, 3, rng);
  EXPECT_EQ(out.size(), 3u);
  EXPECT_TRUE(out.contains(D(2)) && out.contains(D(3)));
}

TEST(SelectHContextTest, NoObservableCandidatesFallsBackToSeededRandom) {
  // Sensing nodes only see externals; internal 5..9 are invisible.
  const IntervalGraph g = MakeGraph({{1, 10}, {1, 11}, {2, 12}}, {3});
  const DeviceSet v_in = Ids({1, 2, 3, 5, 6, 7, 8, 9});
  const DeviceSet prev = Ids({1, 2, 3});
  Rng a(9), b(9);
  const DeviceSet out = SelectHContext(g, v_in, prev, 3, 1, a);
  EXPECT_EQ(out.size(), 3u);
  EXPECT_TRUE(out.contains(D(1)));  // highest utility
  EXPECT_EQ(out, SelectHContext(g, v_in, prev, 3, 1, b));
  std::set<DeviceSet> seen;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    seen.insert(SelectHContext(g, v_in, prev, 3, 1, rng));
  }
  EXPECT_GT(seen.size(), 1u) << "fill should depend on the seed";
}

TEST(SelectHContextTest, UtilityTiesKeepSmallestId) {
  const IntervalGraph g = MakeGraph({{1, 10}, {2, 11}, {3, 12}});
  Rng rng(0);
  const DeviceSet out = SelectHContext(g, Ids({1, 2, 3, 4}), Ids({1, 2, 3}), 3, 2, rng);
  EXPECT_TRUE(out.contains(D(1)) && out.contains(D(2)));
}

// ---- oracle ----

TEST(OracleTest, StarCentre) {
  const IntervalGraph g = MakeGraph({{5, 1}, {5, 2}, {5, 3}, {5, 10}});
  const OracleResult r = SelectOptimalBruteforce(g, Ids({1, 2, 3, 5}), 1);
  EXPECT_EQ(r.sensing, Ids({5}));
  EXPECT_EQ(r.covered_edges, 4u);
}

TEST(OracleTest, FullBudgetCoversEverything) {
  Rng rng(4);
  const ContactTrace t = testing::RandomTrace(rng, 8, 6, 60, 100);
  const IntervalGraph truth = GroundTruthGraph(t, 0, 100);
  const OracleResult r = SelectOptimalBruteforce(truth, t.registry().internal(), 8);
  EXPECT_EQ(r.covered_edges, truth.edges().size());
  EXPECT_EQ(r.sensing, t.registry().internal());
}

TEST(OracleTest, LexicographicTieBreak) {
  const IntervalGraph g = MakeGraph({{1, 2}, {2, 3}, {1, 3}});
  EXPECT_EQ(SelectOptimalBruteforce(g, Ids({1, 2, 3}), 1).sensing, Ids({1}));
  // Single relevant node with n=3 is padded by smallest idle ids.
  EXPECT_EQ(SelectOptimalBruteforce(MakeGraph({{6, 20}}), Ids({1, 2, 6, 8}), 3).sensing,
            Ids({1, 2, 6}));
}

TEST(OracleTest, EightInternalTwentyEdgesBeatsGreedy) {
  // Hand-built: greedy is drawn to the hub 0 but {1, 2, 3} covers more.
  const std::vector<testing::RawEdge> edges = {
      {0, 1}, {0, 2}, {0, 3}, {0, 4},    {0, 5},    {1, 10}, {1, 11}, {1, 12}, {2, 13}, {2, 14},
      {2, 15}, {3, 16}, {3, 17}, {3, 18}, {4, 5},   {6, 7},  {6, 19}, {7, 20}, {4, 21}, {5, 22}};
  const IntervalGraph g = MakeGraph(edges);
  ASSERT_EQ(g.edges().size(), 20u);
  const DeviceSet v_in = Range(0, 8);
  const OracleResult oracle = SelectOptimalBruteforce(g, v_in, 3);
  const DeviceSet greedy = SelectGreedy(g, v_in, 3);
  EXPECT_EQ(oracle.covered_edges, testing::ReferenceOptimum(g, v_in, 3));
  EXPECT_EQ(oracle.covered_edges, CoveredEdgeCount(g, oracle.sensing));
  EXPECT_GE(oracle.covered_edges, CoveredEdgeCount(g, greedy));
  EXPECT_EQ(oracle.covered_edges, 12u);
  EXPECT_EQ(CoveredEdgeCount(g, greedy), 11u);
}

TEST(OracleTest, GuardRefusesLargeInstances) {
  IntervalGraph g(0, 1);
  for (std::uint32_t i = 0; i < 30; ++i) g.AddEdge(D(i), D(100 + i));
  EXPECT_THROW(SelectOptimalBruteforce(g, Range(0, 30), 12), OracleGuardError);
  EXPECT_THROW(SelectOptimalBruteforce(g, Range(0, 30), 3, 100), OracleGuardError);
  EXPECT_NO_THROW(SelectOptimalBruteforce(g, Range(0, 30), 3));
}

TEST(BinomialTest, Values) {
  EXPECT_EQ(BinomialSaturating(30, 12), 86493225u);
  EXPECT_EQ(BinomialSaturating(8, 3), 56u);
  EXPECT_EQ(BinomialSaturating(5, 0), 1u);
  EXPECT_EQ(BinomialSaturating(3, 5), 0u);
  EXPECT_EQ(BinomialSaturating(200, 100), UINT64_MAX);
}

// ---- properties over random observed graphs ----

class SelectorPropertyTest : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(SelectorPropertyTest, ContractsAndOracle) {
  Rng rng(5000 + GetParam());
  const std::uint32_t ni = 1 + static_cast<std::uint32_t>(rng.UniformIndex(10));
  const std::uint32_t ne = static_cast<std::uint32_t>(rng.UniformIndex(10));
  const ContactTrace t = testing::RandomTrace(rng, ni, ne, rng.UniformIndex(80), 100);
  const DeviceSet& v_in = t.registry().internal();
  const IntervalGraph truth = GroundTruthGraph(t, 0, 100);
  DeviceSet prev;
  for (DeviceId id : v_in) {
    if (rng.Bernoulli(0.5)) prev.insert(id);
  }
  const IntervalGraph observed = ObservedGraph(t, 0, 100, prev);

  std::size_t previous_opt = 0;
  for (std::size_t n = 1; n <= ni + 1; ++n) {
    const std::size_t expected_size = std::min<std::size_t>(n, ni);
    Rng sel(GetParam());
    const DeviceSet r = SelectRandom(observed, v_in, n, sel);
    const DeviceSet g = SelectGreedy(observed, v_in, n);
    const DeviceSet h = SelectHContext(observed, v_in, prev, n, std::max<std::size_t>(1, n / 2), sel);
    for (const DeviceSet* s : {&r, &g, &h}) {
      ASSERT_EQ(s->size(), expected_size);
      ASSERT_TRUE(std::ranges::includes(v_in, *s));
    }
    EXPECT_EQ(g, ReferenceGreedy(observed, v_in, n));
    // Every random pick covers a fresh edge until none is left.
    EXPECT_GE(CoveredEdgeCount(observed, r), std::min(expected_size, observed.edges().size()));

    const OracleResult opt = SelectOptimalBruteforce(truth, v_in, n);
    ASSERT_EQ(opt.sensing.size(), expected_size);
    EXPECT_EQ(opt.covered_edges, testing::ReferenceOptimum(truth, v_in, n));
    EXPECT_EQ(opt.covered_edges, CoveredEdgeCount(truth, opt.sensing));
    for (const DeviceSet* s : {&r, &g, &h}) EXPECT_LE(CoveredEdgeCount(truth, *s), opt.covered_edges);
    EXPECT_GE(opt.covered_edges, previous_opt);
    previous_opt = opt.covered_edges;
  }
}

TEST_P(SelectorPropertyTest, GreedyInvariantUnderOrderPreservingRelabel) {
  Rng rng(9000 + GetParam());
  const ContactTrace t = testing::RandomTrace(rng, 9, 9, 60, 100);
  const IntervalGraph g = GroundTruthGraph(t, 0, 100);
  const auto relabel = [](DeviceId id) { return Dev(3 * Raw(id) + 7); };
  IntervalGraph h(0, 100);
  for (const DevicePair& e : g.edges()) h.AddEdge(relabel(e.first()), relabel(e.second()));
  DeviceSet v_in_h;
  for (DeviceId id : t.registry().internal()) v_in_h.insert(relabel(id));
  for (std::size_t n = 1; n <= 9; ++n) {
    DeviceSet mapped;
    for (DeviceId id : SelectGreedy(g, t.registry().internal(), n)) mapped.insert(relabel(id));
    EXPECT_EQ(mapped, SelectGreedy(h, v_in_h, n));
  }
}

INSTANTIATE_TEST_SUITE_P(RandomGraphs, SelectorPropertyTest, ::testing::Range<std::uint64_t>(0, 120));

}  // namespace
}  // namespace crowdsense
