// Copyright 2026 The vqad authors.
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

#pragma once

#include <bit>
#include <cstdint>

namespace vqad {

// splitmix64 finalizer, used to derive independent RNG streams from a master
// seed.  All derived seeds in the library go through these helpers so that a
// run is reproducible from a single seed no matter how work is scheduled.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ splitmix64(b + 0x9e3779b97f4a7c15ULL));
}

// Deterministic per-grid-point seed derived from the master seed and the
// point coordinates (bit patterns of the IEEE doubles).
inline std::uint64_t seed_for_point(std::uint64_t master, double x, double y) {
    return mix_seed(mix_seed(master, std::bit_cast<std::uint64_t>(x)),
                    std::bit_cast<std::uint64_t>(y));
}

}  // namespace vqad
