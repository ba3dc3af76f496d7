// Copyright 2026 The qedge Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qedge {

/// Seedable generator used for every random draw in the library.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distributions are not (their algorithms are
/// implementation-defined), so the mapping from raw 64-bit words to uniform
/// reals and bounded integers is done here instead.
///
/// Stream splitting: a substream for (seed, stream) is the engine seeded with
/// std::seed_seq{lo32(seed), hi32(seed), stream}, where stream is the numeric
/// value of Stream. Each consumer draws from its own substream, so changing
/// the number of draws in one (e.g. an override of the capacities) leaves the
/// others untouched.
class Rng {
public:
    static constexpr std::string_view kVersion = "mt19937_64+seed_seq/v1";

    enum class Stream : std::uint32_t {
        kTopology = 1,
        kDelays = 2,
        kCapacities = 3,
        kCosts = 4,
        kDemands = 5,
        kNodeMapping = 6,
        kPenalties = 7,
        kSolver = 100,
    };

    explicit Rng(std::uint64_t seed);
    Rng(std::uint64_t seed, Stream stream, std::uint32_t index = 0);

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer on [0, bound); bound must be positive. Unbiased.
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

}  // namespace qedge
