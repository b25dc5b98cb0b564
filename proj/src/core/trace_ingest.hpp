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

// Reading and writing the normalized CSV trace formats, plus a seeded
// generator of synthetic conference-like traces.
//
//   contacts.csv   time_s,scanner_id,seen_id
//   devices.csv    device_id,class          (class is internal|external)
//   friends.csv    device_id,friend_id
//   interests.csv  device_id,interest

#ifndef CROWDSENSE_CORE_TRACE_INGEST_HPP_
#define CROWDSENSE_CORE_TRACE_INGEST_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "core/trace_model.hpp"

namespace crowdsense {

inline constexpr std::string_view kContactsHeader = "time_s,scanner_id,seen_id";
inline constexpr std::string_view kDevicesHeader = "device_id,class";
inline constexpr std::string_view kFriendsHeader = "device_id,friend_id";
inline constexpr std::string_view kInterestsHeader = "device_id,interest";

// Seen ids missing from devices.csv are registered as external. Throws
// ParseError on malformed rows and SchemaError when a scanner is not internal.
ContactTrace ParseContacts(std::string_view contacts_text, std::string_view devices_text,
                           std::int64_t tau_s);

struct ProfileLoad {
  SocialProfiles profiles;
  // Rows dropped because they reference a device that is not internal.
  std::size_t dropped_rows = 0;
};

// Either text may be empty, meaning no data of that kind.
ProfileLoad ParseProfiles(std::string_view friends_text, std::string_view interests_text,
                          const DeviceRegistry& registry);

std::string SerializeContacts(const ContactTrace& trace);
std::string SerializeDevices(const DeviceRegistry& registry);
std::string SerializeFriends(const SocialProfiles& profiles);
std::string SerializeInterests(const SocialProfiles& profiles);

struct SynthParams {
  std::int64_t n_internal = 30;
  std::int64_t n_external = 50;
  std::int64_t n_groups = 5;
  std::int64_t steps = 200;
  std::int64_t tau_s = 60;
  double p_detect = 0.8;
  double p_move = 0.05;
  std::int64_t n_locations = 4;
  double friendship_within_group = 0.5;
  std::int64_t interests_per_device = 2;
};

// Throws InvalidConfigError.
void Validate(const SynthParams& params);

struct SyntheticData {
  ContactTrace trace;
  SocialProfiles profiles;
};

// Internal devices get ids [0, n_internal), externals follow. Devices join
// groups round-robin (internal and external numbered separately) and start at
// their group's home location. Every tick each internal device reports each
// co-located device with probability p_detect, then every device moves with
// probability p_move: back home with probability 0.7, otherwise to a uniformly
// chosen location. Friendships are drawn within groups; a device's first
// interest tag is its group's tag.
SyntheticData GenerateSynthetic(const SynthParams& params, std::uint64_t seed);

// Home-return probability used by the mobility model.
inline constexpr double kHomeBias = 0.7;

}  // namespace crowdsense

#endif  // CROWDSENSE_CORE_TRACE_INGEST_HPP_
