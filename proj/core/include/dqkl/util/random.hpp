// Copyright 2026 The dqkl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace dqkl {

using Rng = std::mt19937_64;

/// Purpose tags that separate independent random streams.
enum class StreamTag : std::uint64_t {
    kInit = 1,
    kSubsample = 2,
    kAttack = 3,
    kShots = 4,
    kSplit = 5,
    kPartition = 6,
    kData = 7,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic stream for (master seed, tag, coordinates...). Streams with
/// different coordinates are statistically independent and do not depend on
/// the order in which they are created.
inline Rng make_stream(std::uint64_t master, StreamTag tag,
                       std::initializer_list<std::uint64_t> coords = {}) {
    std::uint64_t h = splitmix64(master ^ splitmix64(static_cast<std::uint64_t>(tag)));
    for (std::uint64_t c : coords) h = splitmix64(h ^ splitmix64(c + 0x632be59bd9b4e019ULL));
    return Rng(h);
}

}  // namespace dqkl
