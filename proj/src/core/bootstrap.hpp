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

// Round-0 sensing assignment, made before any contact graph exists.

#ifndef CROWDSENSE_CORE_BOOTSTRAP_HPP_
#define CROWDSENSE_CORE_BOOTSTRAP_HPP_

#include <cstddef>

#include "core/rng.hpp"
#include "core/trace_model.hpp"

namespace crowdsense {

// All three throw InvalidConfigError unless 1 <= n <= |v_in|.

DeviceSet BootstrapRandom(const DeviceSet& v_in, std::size_t n, Rng& rng);

// Top-n by degree in the friendship graph restricted to v_in.
DeviceSet BootstrapFriendship(const SocialProfiles& profiles, const DeviceSet& v_in, std::size_t n);

// Interest groups are visited largest first (ties by tag). Each visit takes
// the group's unselected member with the most tags. The first pass over the
// groups may take anyone; a second pass only takes members with two or more
// tags; leftover slots are filled uniformly at random.
DeviceSet BootstrapInterest(const SocialProfiles& profiles, const DeviceSet& v_in, std::size_t n,
                            Rng& rng);

DeviceSet RunBootstrap(BootstrapStrategy strategy, const SocialProfiles& profiles,
                       const DeviceSet& v_in, std::size_t n, Rng& rng);

}  // namespace crowdsense

#endif  // CROWDSENSE_CORE_BOOTSTRAP_HPP_
