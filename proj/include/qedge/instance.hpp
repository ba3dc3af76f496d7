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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qedge/common.hpp"

namespace qedge {

struct Edge {
    int u = 0;
    int v = 0;
    double delay_ms = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected weighted network with the areas and candidate EN sites marked.
struct Topology {
    int node_count = 0;
    std::vector<Edge> edges;
    std::vector<int> area_nodes;
    std::vector<int> en_nodes;

    friend bool operator==(const Topology&, const Topology&) = default;
};

/// Data of one joint placement/allocation problem. Index m runs over areas,
/// n over candidate EN locations.
struct ProblemInstance {
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<double> demand;          ///< lambda_m, resource units
    std::vector<double> capacity;        ///< C_n, resource units
    std::vector<double> placement_cost;  ///< h_n
    double budget = 0.0;                 ///< B
    double delay_penalty = 0.0;          ///< beta, cost per unit per ms
    std::vector<double> unmet_penalty;   ///< rho_m, cost per unit dropped
    Matrix delay;                        ///< d_{m,n} in ms, m x n
    std::uint64_t seed = 0;
    std::string generator_version;
    std::optional<Topology> topology;

    /// True when no single EN fits in the budget (only z = 0 is feasible).
    bool no_placement_affordable() const;

    friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

/// Throws Error(kValidation) naming the first offending field.
void validate(const ProblemInstance& instance);

/// Preferential-attachment graph. Starts from a complete graph on
/// attach_degree + 1 nodes; every further node links to attach_degree
/// distinct existing nodes drawn with probability proportional to degree.
/// Edge delays are uniform on [2, 5) ms.
Topology generate_topology(int node_count, int attach_degree, std::uint64_t seed);

/// Shortest-path delay from every area node to every EN node (Dijkstra over
/// undirected edges). Throws Error(kValidation) when a pair is disconnected.
Matrix shortest_path_delays(const Topology& topology);

struct GenConfig {
    std::size_t areas = 0;
    std::size_t ens = 0;
    std::uint64_t seed = 0;

    /// Defaults to max(50, areas + ens) when unset.
    std::optional<int> node_count;
    int attach_degree = 2;

    double demand_lo = 10.0;
    double demand_hi = 50.0;
    double cost_lo = 0.2;
    double cost_hi = 0.25;
    std::vector<double> capacity_ladder = {2, 4, 8, 16, 32, 48, 64, 96};
    double budget = 20.0;
    double delay_penalty = 1e-4;
    double unmet_penalty = 0.1;
    bool embed_topology = false;
};

ProblemInstance generate_instance(const GenConfig& config);

/// Sub-instance keeping the first m_keep areas and every EN.
ProblemInstance restrict_areas(const ProblemInstance& instance, std::size_t m_keep);

std::string instance_to_json(const ProblemInstance& instance);
ProblemInstance instance_from_json(const std::string& text);

void save_instance(const ProblemInstance& instance, const std::string& path);
ProblemInstance load_instance(const std::string& path);

}  // namespace qedge
