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

#include "qedge/instance.hpp"
#include "qedge/model.hpp"

namespace qedge {

struct ExactOptions {
    std::size_t max_n = 20;
    unsigned threads = 1;
};

/// Ground-truth MILP solve: every budget-feasible placement gets an exact
/// allocation solve and the cheapest total wins. Ties go to fewer open ENs,
/// then to the lexicographically smallest z. Serial and threaded runs return
/// the same solution. Throws Error(kCapacity) when n > max_n.
Solution enumerate_solve(const ProblemInstance& instance, const ExactOptions& options = {});

/// Strict total order used for tie-breaking between candidate solutions.
bool better_candidate(double total_a, const Placement& a, double total_b, const Placement& b);

}  // namespace qedge
