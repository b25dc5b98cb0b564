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

#include "core/trace_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "core/errors.hpp"

namespace crowdsense {

const char* ToString(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidConfig:
      return "invalid config";
    case ErrorKind::kParse:
      return "parse error";
    case ErrorKind::kSchema:
      return "schema error";
    case ErrorKind::kOracleGuard:
      return "oracle guard exceeded";
    case ErrorKind::kInternalConsistency:
      return "internal consistency error";
    case ErrorKind::kIo:
      return "i/o error";
  }
  return "error";
}

DevicePair::DevicePair(DeviceId a, DeviceId b)
    : first_(std::min(a, b)), second_(std::max(a, b)) {
  if (a == b) {
    throw InvalidConfigError("device pair needs distinct endpoints, got " +
                             std::to_string(Raw(a)) + " twice");
  }
}

DeviceRegistry::DeviceRegistry(DeviceSet internal, DeviceSet external)
    : internal_(std::move(internal)), external_(std::move(external)) {
  if (internal_.empty()) throw InvalidConfigError("registry has no internal devices");
  for (DeviceId id : external_) {
    if (internal_.contains(id)) {
      throw InvalidConfigError("device " + std::to_string(Raw(id)) +
                               " is both internal and external");
    }
  }
}

ContactTrace::ContactTrace(std::vector<ContactEvent> events, DeviceRegistry registry,
                           std::int64_t tau_s, std::int64_t epoch_s)
    : events_(std::move(events)),
      registry_(std::move(registry)),
      tau_s_(tau_s),
      epoch_s_(epoch_s) {
  if (tau_s_ <= 0) throw InvalidConfigError("tau_s must be positive");
  std::stable_sort(events_.begin(), events_.end(),
                   [](const ContactEvent& a, const ContactEvent& b) { return a.time_s < b.time_s; });
  for (const ContactEvent& e : events_) {
    if (e.time_s < 0) throw InvalidConfigError("event with negative time");
    if (e.scanner == e.seen) {
      throw InvalidConfigError("device " + std::to_string(Raw(e.scanner)) + " scanned itself");
    }
    if (!registry_.IsInternal(e.scanner)) {
      throw InvalidConfigError("scanner " + std::to_string(Raw(e.scanner)) + " is not internal");
    }
    if (!registry_.Contains(e.seen)) {
      throw InvalidConfigError("seen device " + std::to_string(Raw(e.seen)) + " is unregistered");
    }
  }
}

std::int64_t ContactTrace::first_time_s() const {
  return events_.empty() ? 0 : events_.front().time_s;
}

std::int64_t ContactTrace::last_time_s() const {
  return events_.empty() ? 0 : events_.back().time_s;
}

std::span<const ContactEvent> ContactTrace::Window(std::int64_t start_s,
                                                   std::int64_t end_s) const {
  auto by_time = [](const ContactEvent& e, std::int64_t t) { return e.time_s < t; };
  auto lo = std::lower_bound(events_.begin(), events_.end(), start_s, by_time);
  auto hi = std::lower_bound(lo, events_.end(), end_s, by_time);
  return {lo, hi};
}

std::string_view ToString(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kRandom:
      return "random";
    case Algorithm::kGreedy:
      return "greedy";
    case Algorithm::kHContext:
      return "hcontext";
  }
  return "unknown";
}

std::string_view ToString(BootstrapStrategy strategy) {
  switch (strategy) {
    case BootstrapStrategy::kRandom:
      return "random";
    case BootstrapStrategy::kFriendship:
      return "friendship";
    case BootstrapStrategy::kInterest:
      return "interest";
  }
  return "unknown";
}

Algorithm ParseAlgorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kRandom, Algorithm::kGreedy, Algorithm::kHContext}) {
    if (ToString(a) == name) return a;
  }
  throw InvalidConfigError("unknown algorithm '" + std::string(name) + "'");
}

BootstrapStrategy ParseBootstrap(std::string_view name) {
  for (BootstrapStrategy b :
       {BootstrapStrategy::kRandom, BootstrapStrategy::kFriendship, BootstrapStrategy::kInterest}) {
    if (ToString(b) == name) return b;
  }
  throw InvalidConfigError("unknown bootstrap strategy '" + std::string(name) + "'");
}

std::int64_t ResolveBudget(const BudgetSpec& spec, std::int64_t v_in_size) {
  if (v_in_size <= 0) throw InvalidConfigError("no internal devices to budget over");
  if (const auto* count = std::get_if<BudgetCount>(&spec)) {
    if (count->count < 1 || count->count > v_in_size) {
      throw InvalidConfigError("budget n=" + std::to_string(count->count) +
                               " outside [1, " + std::to_string(v_in_size) + "]");
    }
    return count->count;
  }
  const double fraction = std::get<BudgetFraction>(spec).fraction;
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw InvalidConfigError("budget fraction " + std::to_string(fraction) + " outside (0, 1]");
  }
  // 0.4 * 76 is 30.400000000000002 in binary; the epsilon keeps exact
  // products like 0.5 * 30 from rounding up past their integer value.
  const double scaled = fraction * static_cast<double>(v_in_size);
  auto n = static_cast<std::int64_t>(std::ceil(scaled - 1e-9));
  return std::clamp<std::int64_t>(n, 1, v_in_size);
}

std::int64_t ResolveKeep(double k_fraction, std::int64_t n) {
  if (!(k_fraction > 0.0 && k_fraction <= 1.0)) {
    throw InvalidConfigError("k fraction " + std::to_string(k_fraction) + " outside (0, 1]");
  }
  auto k = static_cast<std::int64_t>(std::floor(k_fraction * static_cast<double>(n) + 1e-9));
  return std::clamp<std::int64_t>(k, 1, n);
}

ResolvedConfig Resolve(const SimConfig& config, const ContactTrace& trace) {
  ResolvedConfig out{config, 0, 0};
  const auto v_in = static_cast<std::int64_t>(trace.registry().internal().size());
  out.n = ResolveBudget(config.budget, v_in);
  out.k = ResolveKeep(config.k_fraction, out.n);
  if (config.rounds < 1) throw InvalidConfigError("rounds must be at least 1");
  if (config.ts_seconds < trace.tau_s()) {
    throw InvalidConfigError("ts_seconds (" + std::to_string(config.ts_seconds) +
                             ") shorter than tau (" + std::to_string(trace.tau_s()) + ")");
  }
  if (config.td_seconds < 0) throw InvalidConfigError("td_seconds must be non-negative");
  return out;
}

}  // namespace crowdsense
