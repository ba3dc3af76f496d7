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
#include <vector>

#include "qedge/common.hpp"
#include "qedge/instance.hpp"

namespace qedge {

/// z_n = 1 when an EN is installed at location n.
struct Placement {
    std::vector<std::uint8_t> z;

    Placement() = default;
    explicit Placement(std::size_t n) : z(n, 0) {}
    explicit Placement(std::vector<std::uint8_t> bits) : z(std::move(bits)) {}

    std::size_t size() const noexcept { return z.size(); }
    bool open(std::size_t n) const { return z[n] != 0; }
    std::size_t open_count() const;
    /// "0110"-style rendering, index 0 first.
    std::string to_string() const;

    friend bool operator==(const Placement&, const Placement&) = default;
};

struct Allocation {
    Matrix x;               ///< workload routed from area m to EN n
    std::vector<double> u;  ///< unmet demand per area

    friend bool operator==(const Allocation&, const Allocation&) = default;
};

struct CostBreakdown {
    double placement = 0.0;
    double delay = 0.0;
    double unmet = 0.0;
    double total = 0.0;
};

struct Solution {
    Placement placement;
    Allocation allocation;
    CostBreakdown cost;
};

double placement_cost(const ProblemInstance& instance, const Placement& placement);
double delay_cost(const ProblemInstance& instance, const Allocation& allocation);
double unmet_cost(const ProblemInstance& instance, const Allocation& allocation);

/// total = placement + delay + unmet, each summed m-major then n.
CostBreakdown total_objective(const ProblemInstance& instance, const Placement& placement,
                              const Allocation& allocation);
CostBreakdown total_objective(const ProblemInstance& instance, const Solution& solution);

enum class Constraint { kBudget, kCapacity, kDemandBalance, kIntegrality, kSign };

const char* constraint_name(Constraint c);

struct Violation {
    Constraint constraint;
    std::size_t index;  ///< EN index for capacity, area for balance, flat entry for sign
    double residual;
};

struct ViolationReport {
    std::vector<Violation> violations;
    bool feasible() const noexcept { return violations.empty(); }
    std::string to_string() const;
};

/// Lists every constraint whose residual exceeds tol.
ViolationReport check_feasibility(const ProblemInstance& instance, const Solution& solution,
                                  double tol = kFeasibilityTol);

std::string solution_to_json(const Solution& solution);
Solution solution_from_json(const std::string& text);

}  // namespace qedge
