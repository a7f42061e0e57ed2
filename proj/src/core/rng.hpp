// SPDX-License-Identifier: Apache-2.0
//
// coopnet: analytical model and simulator for cooperative small-cell
// vehicular networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef COOPNET_RNG_HPP
#define COOPNET_RNG_HPP

#include <cstdint>
#include <random>

namespace coopnet {

using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Counter-based substream seed: (master, stream, index) -> seed. Every trial,
// replication or link gets its own engine, so results do not depend on how
// the work is scheduled across threads.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index = 0) {
    return splitmix64(splitmix64(splitmix64(master) ^ stream) + index);
}

inline Engine make_engine(std::uint64_t master, std::uint64_t stream, std::uint64_t index = 0) {
    return Engine(derive_seed(master, stream, index));
}

// Stream tags, fixed so that files produced by older runs stay reproducible.
namespace streams {
inline constexpr std::uint64_t kDeployment = 0x6465706c6f79ULL;
inline constexpr std::uint64_t kCoverageTrial = 0x636f76657267ULL;
inline constexpr std::uint64_t kCoopTrial = 0x636f6f707472ULL;
inline constexpr std::uint64_t kMobility = 0x6d6f62696c65ULL;
inline constexpr std::uint64_t kInterference = 0x696e74657266ULL;
} // namespace streams

} // namespace coopnet

#endif
