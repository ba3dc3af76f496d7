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

#include <vector>

#include "qedge/instance.hpp"
#include "qedge/model.hpp"

namespace qedge {

/// Node potentials of the transportation network: supply nodes (areas), open
/// EN nodes and the common sink. For an optimal flow every residual arc
/// i -> j has reduced cost c_ij + pi_i - pi_j >= 0.
struct AllocationDuals {
    std::vector<double> area;
    std::vector<double> en;
    double sink = 0.0;
};

struct AllocationResult {
    Allocation allocation;
    double objective = 0.0;  ///< delay cost + unmet cost
    AllocationDuals duals;
};

/// Optimal workload allocation for a fixed placement.
///
/// The LP is a min-cost flow: area m supplies lambda_m; it may ship to any
/// open EN n at unit cost beta * d_{m,n} or drop to the sink at rho_m; EN n
/// forwards at most C_n to the sink. Solved exactly by successive shortest
/// paths with Dijkstra on reduced costs. Paths of equal cost resolve to the
/// lowest EN index. Areas with zero demand get no arcs.
AllocationResult solve_allocation(const ProblemInstance& instance, const Placement& placement);

/// Largest reduced-cost violation of `duals` against the residual network of
/// `allocation`: forward arcs with spare capacity must have nonnegative reduced
/// cost and arcs carrying flow nonpositive. Zero (up to rounding) iff the
/// allocation is optimal and certified by the potentials. Throws
/// Error(kParameter) when the allocation is infeasible for the placement.
double allocation_certificate_gap(const ProblemInstance& instance, const Placement& placement,
                                  const Allocation& allocation, const AllocationDuals& duals);

}  // namespace qedge
