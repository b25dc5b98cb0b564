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

#include "core/trace_ingest.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace crowdsense {
namespace {

struct Row {
  std::size_t line = 0;
  std::vector<std::string_view> fields;
};

std::vector<Row> SplitCsv(std::string_view text, std::string_view header) {
  std::vector<Row> rows;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (!text.empty()) {
    auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!saw_header) {
      if (line != header) {
        throw ParseError(line_no, "expected header '" + std::string(header) + "', got '" +
                                      std::string(line) + "'");
      }
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;
    Row row{line_no, {}};
    std::size_t start = 0;
    while (true) {
      auto comma = line.find(',', start);
      row.fields.push_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  if (!saw_header) throw ParseError(1, "missing header '" + std::string(header) + "'");
  return rows;
}

void ExpectFields(const Row& row, std::size_t count) {
  if (row.fields.size() != count) {
    throw ParseError(row.line, "expected " + std::to_string(count) + " fields, got " +
                                   std::to_string(row.fields.size()));
  }
}

std::int64_t ParseInt(const Row& row, std::string_view field, std::string_view what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw ParseError(row.line, "bad " + std::string(what) + " '" + std::string(field) + "'");
  }
  return value;
}

DeviceId ParseDevice(const Row& row, std::string_view field, std::string_view what) {
  const std::int64_t v = ParseInt(row, field, what);
  if (v < 0 || v > std::numeric_limits<std::uint32_t>::max()) {
    throw ParseError(row.line, std::string(what) + " out of range: " + std::to_string(v));
  }
  return Dev(static_cast<std::uint32_t>(v));
}

}  // namespace

ContactTrace ParseContacts(std::string_view contacts_text, std::string_view devices_text,
                           std::int64_t tau_s) {
  DeviceSet internal;
  DeviceSet external;
  for (const Row& row : SplitCsv(devices_text, kDevicesHeader)) {
    ExpectFields(row, 2);
    DeviceId id = ParseDevice(row, row.fields[0], "device_id");
    std::string_view cls = row.fields[1];
    bool is_internal = cls == "internal";
    if (!is_internal && cls != "external") {
      throw ParseError(row.line, "class must be internal or external, got '" + std::string(cls) + "'");
    }
    if ((is_internal && external.contains(id)) || (!is_internal && internal.contains(id))) {
      throw SchemaError(row.line, "device " + std::to_string(Raw(id)) + " declared with both classes");
    }
    (is_internal ? internal : external).insert(id);
  }
  if (internal.empty()) throw SchemaError(1, "devices file declares no internal device");

  std::vector<ContactEvent> events;
  for (const Row& row : SplitCsv(contacts_text, kContactsHeader)) {
    ExpectFields(row, 3);
    ContactEvent e;
    e.time_s = ParseInt(row, row.fields[0], "time_s");
    e.scanner = ParseDevice(row, row.fields[1], "scanner_id");
    e.seen = ParseDevice(row, row.fields[2], "seen_id");
    if (e.time_s < 0) throw ParseError(row.line, "negative time_s");
    if (!internal.contains(e.scanner)) {
      throw SchemaError(row.line, "scanner " + std::to_string(Raw(e.scanner)) +
                                      " is not declared internal");
    }
    if (e.scanner == e.seen) {
      throw SchemaError(row.line, "device " + std::to_string(Raw(e.scanner)) + " scanned itself");
    }
    if (!internal.contains(e.seen)) external.insert(e.seen);
    events.push_back(e);
  }
  return ContactTrace(std::move(events), DeviceRegistry(std::move(internal), std::move(external)),
                      tau_s);
}

ProfileLoad ParseProfiles(std::string_view friends_text, std::string_view interests_text,
                          const DeviceRegistry& registry) {
  ProfileLoad out;
  if (!friends_text.empty()) {
    for (const Row& row : SplitCsv(friends_text, kFriendsHeader)) {
      ExpectFields(row, 2);
      DeviceId a = ParseDevice(row, row.fields[0], "device_id");
      DeviceId b = ParseDevice(row, row.fields[1], "friend_id");
      if (a == b || !registry.IsInternal(a) || !registry.IsInternal(b)) {
        ++out.dropped_rows;
        continue;
      }
      out.profiles.friendships.insert(DevicePair(a, b));
    }
  }
  if (!interests_text.empty()) {
    for (const Row& row : SplitCsv(interests_text, kInterestsHeader)) {
      ExpectFields(row, 2);
      DeviceId id = ParseDevice(row, row.fields[0], "device_id");
      if (row.fields[1].empty()) throw ParseError(row.line, "empty interest tag");
      if (!registry.IsInternal(id)) {
        ++out.dropped_rows;
        continue;
      }
      out.profiles.interests[id].emplace(row.fields[1]);
    }
  }
  return out;
}

std::string SerializeContacts(const ContactTrace& trace) {
  std::string out(kContactsHeader);
  out += '\n';
  for (const ContactEvent& e : trace.events()) {
    out += std::to_string(e.time_s);
    out += ',';
    out += std::to_string(Raw(e.scanner));
    out += ',';
    out += std::to_string(Raw(e.seen));
    out += '\n';
  }
  return out;
}

std::string SerializeDevices(const DeviceRegistry& registry) {
  std::map<DeviceId, bool> all;
  for (DeviceId id : registry.internal()) all[id] = true;
  for (DeviceId id : registry.external()) all[id] = false;
  std::string out(kDevicesHeader);
  out += '\n';
  for (auto [id, is_internal] : all) {
    out += std::to_string(Raw(id));
    out += is_internal ? ",internal\n" : ",external\n";
  }
  return out;
}

std::string SerializeFriends(const SocialProfiles& profiles) {
  std::string out(kFriendsHeader);
  out += '\n';
  for (const DevicePair& p : profiles.friendships) {
    out += std::to_string(Raw(p.first())) + ',' + std::to_string(Raw(p.second())) + '\n';
  }
  return out;
}

std::string SerializeInterests(const SocialProfiles& profiles) {
  std::string out(kInterestsHeader);
  out += '\n';
  for (const auto& [id, tags] : profiles.interests) {
    for (const std::string& tag : tags) out += std::to_string(Raw(id)) + ',' + tag + '\n';
  }
  return out;
}

void Validate(const SynthParams& p) {
  auto positive = [](std::int64_t v, const char* name) {
    if (v < 1) throw InvalidConfigError(std::string(name) + " must be positive");
  };
  auto probability = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidConfigError(std::string(name) + " must be in [0, 1]");
  };
  positive(p.n_internal, "n_internal");
  positive(p.n_external, "n_external");
  positive(p.n_groups, "n_groups");
  positive(p.steps, "steps");
  positive(p.tau_s, "tau_s");
  positive(p.n_locations, "n_locations");
  positive(p.interests_per_device, "interests_per_device");
  probability(p.p_detect, "p_detect");
  probability(p.p_move, "p_move");
  probability(p.friendship_within_group, "friendship_within_group");
  if (p.n_groups > p.n_internal) {
    throw InvalidConfigError("n_groups (" + std::to_string(p.n_groups) +
                             ") exceeds n_internal (" + std::to_string(p.n_internal) + ")");
  }
}

SyntheticData GenerateSynthetic(const SynthParams& p, std::uint64_t seed) {
  Validate(p);
  const auto n_internal = static_cast<std::size_t>(p.n_internal);
  const auto n_total = n_internal + static_cast<std::size_t>(p.n_external);
  const auto n_groups = static_cast<std::size_t>(p.n_groups);
  const auto n_locations = static_cast<std::uint64_t>(p.n_locations);

  std::vector<std::size_t> group(n_total);
  for (std::size_t d = 0; d < n_total; ++d) {
    group[d] = d < n_internal ? d % n_groups : (d - n_internal) % n_groups;
  }
  auto home = [&](std::size_t d) { return group[d] % n_locations; };

  // Independent sub-streams so profile draws do not depend on trace length.
  const std::uint64_t base = SplitMix64(seed ^ SplitMix64(static_cast<std::uint64_t>(RngStream::kIngest)));
  Rng mobility(SplitMix64(base + 1));
  Rng social(SplitMix64(base + 2));

  std::vector<std::uint64_t> location(n_total);
  for (std::size_t d = 0; d < n_total; ++d) location[d] = home(d);

  std::vector<ContactEvent> events;
  std::vector<std::vector<std::size_t>> at(n_locations);
  for (std::int64_t tick = 0; tick < p.steps; ++tick) {
    const std::int64_t t = tick * p.tau_s;
    for (auto& bucket : at) bucket.clear();
    for (std::size_t d = 0; d < n_total; ++d) at[location[d]].push_back(d);
    for (std::size_t s = 0; s < n_internal; ++s) {
      for (std::size_t d : at[location[s]]) {
        if (d == s) continue;
        if (mobility.Bernoulli(p.p_detect)) {
          events.push_back({t, Dev(static_cast<std::uint32_t>(s)), Dev(static_cast<std::uint32_t>(d))});
        }
      }
    }
    for (std::size_t d = 0; d < n_total; ++d) {
      if (!mobility.Bernoulli(p.p_move)) continue;
      location[d] = mobility.Bernoulli(kHomeBias) ? home(d) : mobility.UniformIndex(n_locations);
    }
  }

  DeviceSet internal;
  DeviceSet external;
  for (std::size_t d = 0; d < n_total; ++d) {
    (d < n_internal ? internal : external).insert(Dev(static_cast<std::uint32_t>(d)));
  }

  SocialProfiles profiles;
  for (std::size_t a = 0; a < n_internal; ++a) {
    for (std::size_t b = a + 1; b < n_internal; ++b) {
      if (group[a] == group[b] && social.Bernoulli(p.friendship_within_group)) {
        profiles.friendships.insert(
            DevicePair(Dev(static_cast<std::uint32_t>(a)), Dev(static_cast<std::uint32_t>(b))));
      }
    }
  }
  const std::size_t n_tags =
      std::max(n_groups, static_cast<std::size_t>(p.interests_per_device));
  auto tag_name = [](std::size_t g) { return "topic" + std::to_string(g); };
  for (std::size_t d = 0; d < n_internal; ++d) {
    auto& tags = profiles.interests[Dev(static_cast<std::uint32_t>(d))];
    tags.insert(tag_name(group[d]));
    std::vector<std::size_t> pool;
    for (std::size_t g = 0; g < n_tags; ++g) {
      if (g != group[d]) pool.push_back(g);
    }
    for (std::int64_t i = 1; i < p.interests_per_device && !pool.empty(); ++i) {
      tags.insert(tag_name(social.TakeOne(pool)));
    }
  }

  return {ContactTrace(std::move(events),
                       DeviceRegistry(std::move(internal), std::move(external)), p.tau_s),
          std::move(profiles)};
}

}  // namespace crowdsense
