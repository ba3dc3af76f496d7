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

#include "qedge/rng.hpp"

#include <limits>

namespace qedge {

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint32_t stream, std::uint32_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32), stream, index};
    return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : engine_(seeded_engine(seed, 0, 0)) {}

Rng::Rng(std::uint64_t seed, Stream stream, std::uint32_t index)
    : engine_(seeded_engine(seed, static_cast<std::uint32_t>(stream), index)) {}

std::uint64_t Rng::below(std::uint64_t bound) {
    // Rejection from the largest multiple of bound.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r = engine_();
    while (r >= limit) r = engine_();
    return r % bound;
}

}  // namespace qedge
