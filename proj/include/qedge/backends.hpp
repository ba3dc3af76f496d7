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
#include <optional>
#include <string>
#include <vector>

#include "qedge/qubo.hpp"

namespace qedge {

struct QuboSolverResult {
    Bits best_bitstring;
    double best_energy = 0.0;  ///< always qubo_eval(qubo, best_bitstring)
    std::uint64_t samples_evaluated = 0;
    std::string backend_name;
    double wall_time_s = 0.0;
    /// Best-seen energy after each sweep (anneal only).
    std::vector<double> trace;
};

inline constexpr std::size_t kExhaustiveMaxVars = 24;

/// Global minimizer by full enumeration; equal energies resolve to the
/// lexicographically smallest bitstring (bit 0 compared first).
QuboSolverResult solve_exhaustive(const Qubo& qubo);

struct AnnealConfig {
    std::optional<double> t_start;      ///< default: max |Q_ij|
    std::optional<double> t_end;        ///< default: 1e-3 * t_start
    std::optional<std::size_t> sweeps;  ///< default: 200 * num_vars
};

/// Single-bit-flip Metropolis with geometric cooling from t_start to t_end.
QuboSolverResult solve_anneal(const Qubo& qubo, const AnnealConfig& config, std::uint64_t seed);

}  // namespace qedge
