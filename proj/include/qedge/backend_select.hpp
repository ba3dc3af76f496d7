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
#include <string>

#include "qedge/backends.hpp"
#include "qedge/qaoa.hpp"

namespace qedge {

enum class BackendKind { kExhaustive, kAnneal, kQaoa };

const char* backend_name(BackendKind kind);
/// Accepts "exhaustive", "anneal", "qaoa"; throws Error(kParameter) otherwise.
BackendKind parse_backend(const std::string& name);

struct BackendConfig {
    BackendKind kind = BackendKind::kExhaustive;
    AnnealConfig anneal;
    QaoaConfig qaoa;
};

/// Runs the selected backend. Every backend takes the same Qubo and returns
/// the same result type, so callers stay backend-agnostic.
QuboSolverResult solve_qubo(const Qubo& qubo, const BackendConfig& config, std::uint64_t seed);

}  // namespace qedge
