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

// Domain types shared by every module: devices, scan events, traces, social
// profiles and the run configuration. All of them are immutable values once
// constructed.

#ifndef CROWDSENSE_CORE_TRACE_MODEL_HPP_
#define CROWDSENSE_CORE_TRACE_MODEL_HPP_

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace crowdsense {

enum class DeviceId : std::uint32_t {};

constexpr std::uint32_t Raw(DeviceId id) { return static_cast<std::uint32_t>(id); }
constexpr DeviceId Dev(std::uint32_t raw) { return static_cast<DeviceId>(raw); }

using DeviceSet = std::set<DeviceId>;

// Unordered pair of distinct devices, stored with first < second.
class DevicePair {
 public:
  DevicePair(DeviceId a, DeviceId b);

  DeviceId first() const { return first_; }
  DeviceId second() const { return second_; }
  bool Contains(DeviceId id) const { return id == first_ || id == second_; }
  DeviceId Other(DeviceId id) const { return id == first_ ? second_ : first_; }

  auto operator<=>(const DevicePair&) const = default;

 private:
  DeviceId first_;
  DeviceId second_;
};

class DeviceRegistry {
 public:
  // Throws InvalidConfigError if the sets overlap or `internal` is empty.
  DeviceRegistry(DeviceSet internal, DeviceSet external);

  const DeviceSet& internal() const { return internal_; }
  const DeviceSet& external() const { return external_; }

  bool IsInternal(DeviceId id) const { return internal_.contains(id); }
  bool IsExternal(DeviceId id) const { return external_.contains(id); }
  bool Contains(DeviceId id) const { return IsInternal(id) || IsExternal(id); }
  std::size_t size() const { return internal_.size() + external_.size(); }

 private:
  DeviceSet internal_;
  DeviceSet external_;
};

struct ContactEvent {
  std::int64_t time_s = 0;
  DeviceId scanner{};
  DeviceId seen{};

  auto operator<=>(const ContactEvent&) const = default;
};

class ContactTrace {
 public:
  // Sorts events by time (stable, so equal-time rows keep file order) and
  // validates every event against the registry.
  ContactTrace(std::vector<ContactEvent> events, DeviceRegistry registry,
               std::int64_t tau_s, std::int64_t epoch_s = 0);

  std::span<const ContactEvent> events() const { return events_; }
  const DeviceRegistry& registry() const { return registry_; }
  std::int64_t tau_s() const { return tau_s_; }
  std::int64_t epoch_s() const { return epoch_s_; }

  bool empty() const { return events_.empty(); }
  std::int64_t first_time_s() const;
  std::int64_t last_time_s() const;

  // Events with start_s <= time_s < end_s, still sorted.
  std::span<const ContactEvent> Window(std::int64_t start_s, std::int64_t end_s) const;

 private:
  std::vector<ContactEvent> events_;
  DeviceRegistry registry_;
  std::int64_t tau_s_;
  std::int64_t epoch_s_;
};

struct SocialProfiles {
  std::set<DevicePair> friendships;
  std::map<DeviceId, std::set<std::string>> interests;
};

enum class Algorithm { kRandom, kGreedy, kHContext };
enum class BootstrapStrategy { kRandom, kFriendship, kInterest };

std::string_view ToString(Algorithm algorithm);
std::string_view ToString(BootstrapStrategy strategy);
// Throw InvalidConfigError for unknown names.
Algorithm ParseAlgorithm(std::string_view name);
BootstrapStrategy ParseBootstrap(std::string_view name);

struct BudgetCount {
  std::int64_t count = 1;
};
struct BudgetFraction {
  double fraction = 0.4;
};
using BudgetSpec = std::variant<BudgetCount, BudgetFraction>;

// Fractions resolve to ceil(fraction * v_in_size); counts pass through.
// Throws InvalidConfigError for counts outside [1, v_in_size] and fractions
// outside (0, 1].
std::int64_t ResolveBudget(const BudgetSpec& spec, std::int64_t v_in_size);

// floor(k_fraction * n), at least 1.
std::int64_t ResolveKeep(double k_fraction, std::int64_t n);

struct SimConfig {
  std::int64_t ts_seconds = 240;
  std::int64_t td_seconds = 0;  // recorded only; consumes no simulated time
  BudgetSpec budget = BudgetFraction{0.4};
  double k_fraction = 0.5;
  std::int64_t rounds = 20;
  Algorithm algorithm = Algorithm::kHContext;
  BootstrapStrategy bootstrap = BootstrapStrategy::kRandom;
  std::uint64_t seed = 0;
  std::int64_t start_time_s = 0;
};

struct ResolvedConfig {
  SimConfig config;
  std::int64_t n = 0;
  std::int64_t k = 0;
};

// Checks every SimConfig invariant against the trace and resolves n and k.
ResolvedConfig Resolve(const SimConfig& config, const ContactTrace& trace);

}  // namespace crowdsense

#endif  // CROWDSENSE_CORE_TRACE_MODEL_HPP_
