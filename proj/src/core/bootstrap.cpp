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

#include "core/bootstrap.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace crowdsense {
namespace {

void CheckBudget(const DeviceSet& v_in, std::size_t n) {
  if (n < 1 || n > v_in.size()) {
    throw InvalidConfigError("bootstrap size " + std::to_string(n) + " outside [1, " +
                             std::to_string(v_in.size()) + "]");
  }
}

void FillRandom(DeviceSet& out, const DeviceSet& v_in, std::size_t n, Rng& rng) {
  std::vector<DeviceId> rest;
  for (DeviceId id : v_in) {
    if (!out.contains(id)) rest.push_back(id);
  }
  while (out.size() < n) out.insert(rng.TakeOne(rest));
}

}  // namespace

DeviceSet BootstrapRandom(const DeviceSet& v_in, std::size_t n, Rng& rng) {
  CheckBudget(v_in, n);
  DeviceSet out;
  FillRandom(out, v_in, n, rng);
  return out;
}

DeviceSet BootstrapFriendship(const SocialProfiles& profiles, const DeviceSet& v_in,
                              std::size_t n) {
  CheckBudget(v_in, n);
  std::map<DeviceId, std::size_t> degree;
  for (DeviceId id : v_in) degree[id] = 0;
  for (const DevicePair& p : profiles.friendships) {
    if (v_in.contains(p.first()) && v_in.contains(p.second())) {
      ++degree[p.first()];
      ++degree[p.second()];
    }
  }
  std::vector<std::pair<DeviceId, std::size_t>> ranked(degree.begin(), degree.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  DeviceSet out;
  for (std::size_t i = 0; i < n; ++i) out.insert(ranked[i].first);
  return out;
}

DeviceSet BootstrapInterest(const SocialProfiles& profiles, const DeviceSet& v_in, std::size_t n,
                            Rng& rng) {
  CheckBudget(v_in, n);
  std::map<std::string, std::vector<DeviceId>> groups;  // members in ascending id
  std::map<DeviceId, std::size_t> tag_count;
  for (const auto& [id, tags] : profiles.interests) {
    if (!v_in.contains(id)) continue;
    tag_count[id] = tags.size();
    for (const std::string& tag : tags) groups[tag].push_back(id);
  }
  std::vector<const std::pair<const std::string, std::vector<DeviceId>>*> order;
  for (const auto& g : groups) order.push_back(&g);
  // std::map iteration already sorts by tag, so a stable sort on size keeps
  // lexicographic order among equal sizes.
  std::stable_sort(order.begin(), order.end(),
                   [](const auto* a, const auto* b) { return a->second.size() > b->second.size(); });

  DeviceSet out;
  auto pass = [&](std::size_t min_tags) {
    for (const auto* group : order) {
      if (out.size() >= n) return;
      const DeviceId* pick = nullptr;
      std::size_t pick_tags = 0;
      for (const DeviceId& id : group->second) {
        const std::size_t tags = tag_count[id];
        if (out.contains(id) || tags < min_tags) continue;
        if (pick == nullptr || tags > pick_tags) {
          pick = &id;
          pick_tags = tags;
        }
      }
      if (pick != nullptr) out.insert(*pick);
    }
  };
  pass(1);
  pass(2);
  FillRandom(out, v_in, n, rng);
  return out;
}

DeviceSet RunBootstrap(BootstrapStrategy strategy, const SocialProfiles& profiles,
                       const DeviceSet& v_in, std::size_t n, Rng& rng) {
  switch (strategy) {
    case BootstrapStrategy::kRandom:
      return BootstrapRandom(v_in, n, rng);
    case BootstrapStrategy::kFriendship:
      return BootstrapFriendship(profiles, v_in, n);
    case BootstrapStrategy::kInterest:
      return BootstrapInterest(profiles, v_in, n, rng);
  }
  throw InvalidConfigError("unknown bootstrap strategy");
}

}  // namespace crowdsense
