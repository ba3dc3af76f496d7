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

#include "qedge/alloc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qedge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class FlowNetwork {
public:
    struct Arc {
        int to;
        int rev;
        double residual;
        double cost;
    };

    explicit FlowNetwork(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

    /// Returns the index of the forward arc inside adj_[from].
    int add_arc(int from, int to, double capacity, double cost) {
        auto& fwd = adj_[static_cast<std::size_t>(from)];
        auto& bwd = adj_[static_cast<std::size_t>(to)];
        fwd.push_back({to, static_cast<int>(bwd.size()), capacity, cost});
        bwd.push_back({from, static_cast<int>(fwd.size()) - 1, 0.0, -cost});
        return static_cast<int>(fwd.size()) - 1;
    }

    double flow(int from, int arc) const {
        const Arc& a = adj_[static_cast<std::size_t>(from)][static_cast<std::size_t>(arc)];
        return adj_[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.rev)].residual;
    }

    std::size_t size() const { return adj_.size(); }

    /// Pushes all supply from `source` to `sink` along successive shortest
    /// paths. Returns false if the iteration guard trips.
    bool run(int source, int sink, std::vector<double>& potential) {
        const std::size_t n = adj_.size();
        potential.assign(n, 0.0);
        std::vector<double> dist(n);
        std::vector<char> done(n);
        std::vector<int> prev_node(n), prev_arc(n);

        std::size_t arcs = 0;
        for (const auto& list : adj_) arcs += list.size();
        const std::size_t guard = 4 * arcs * arcs + 16;

        for (std::size_t iter = 0; iter < guard; ++iter) {
            // Dense Dijkstra: ties pop the lowest node index, and a label only
            // changes on strict improvement.
            std::fill(dist.begin(), dist.end(), kInf);
            std::fill(done.begin(), done.end(), 0);
            dist[static_cast<std::size_t>(source)] = 0.0;
            for (;;) {
                int u = -1;
                for (std::size_t v = 0; v < n; ++v) {
                    if (!done[v] && dist[v] < kInf && (u < 0 || dist[v] < dist[static_cast<std::size_t>(u)])) {
                        u = static_cast<int>(v);
                    }
                }
                if (u < 0) break;
                const auto uu = static_cast<std::size_t>(u);
                done[uu] = 1;
                for (std::size_t k = 0; k < adj_[uu].size(); ++k) {
                    const Arc& a = adj_[uu][k];
                    if (a.residual <= 0.0) continue;
                    const auto vv = static_cast<std::size_t>(a.to);
                    const double rc = std::max(0.0, a.cost + potential[uu] - potential[vv]);
                    if (dist[uu] + rc < dist[vv]) {
                        dist[vv] = dist[uu] + rc;
                        prev_node[vv] = u;
                        prev_arc[vv] = static_cast<int>(k);
                    }
                }
            }
            const double to_sink = dist[static_cast<std::size_t>(sink)];
            if (to_sink == kInf) return true;  // supply exhausted

            for (std::size_t v = 0; v < n; ++v) potential[v] += std::min(dist[v], to_sink);

            double push = kInf;
            for (int v = sink; v != source; v = prev_node[static_cast<std::size_t>(v)]) {
                const auto pv = static_cast<std::size_t>(prev_node[static_cast<std::size_t>(v)]);
                push = std::min(push, adj_[pv][static_cast<std::size_t>(prev_arc[static_cast<std::size_t>(v)])].residual);
            }
            for (int v = sink; v != source; v = prev_node[static_cast<std::size_t>(v)]) {
                const auto pv = static_cast<std::size_t>(prev_node[static_cast<std::size_t>(v)]);
                Arc& a = adj_[pv][static_cast<std::size_t>(prev_arc[static_cast<std::size_t>(v)])];
                a.residual = a.residual == push ? 0.0 : a.residual - push;
                adj_[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.rev)].residual += push;
            }
        }
        return false;
    }

private:
    std::vector<std::vector<Arc>> adj_;
};

}  // namespace

AllocationResult solve_allocation(const ProblemInstance& inst, const Placement& placement) {
    if (placement.size() != inst.n) throw_parameter("solve_allocation: placement length != n");
    for (auto b : placement.z) {
        if (b > 1) throw_parameter("solve_allocation: placement must be binary");
    }

    // Node layout: 0 source, 1..m areas, m+1..m+n ENs, m+n+1 sink.
    const int m = static_cast<int>(inst.m);
    const int n = static_cast<int>(inst.n);
    const int source = 0;
    const int sink = m + n + 1;
    FlowNetwork net(m + n + 2);

    std::vector<int> serve_arc(inst.m * inst.n, -1);
    std::vector<int> drop_arc(inst.m, -1);
    for (int i = 0; i < m; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        if (!(inst.demand[ii] > 0.0)) continue;
        net.add_arc(source, 1 + i, inst.demand[ii], 0.0);
        for (int j = 0; j < n; ++j) {
            const auto jj = static_cast<std::size_t>(j);
            if (!placement.open(jj)) continue;
            serve_arc[ii * inst.n + jj] =
                net.add_arc(1 + i, 1 + m + j, kInf, inst.delay_penalty * inst.delay(ii, jj));
        }
        drop_arc[ii] = net.add_arc(1 + i, sink, kInf, inst.unmet_penalty[ii]);
    }
    for (int j = 0; j < n; ++j) {
        if (placement.open(static_cast<std::size_t>(j))) {
            net.add_arc(1 + m + j, sink, inst.capacity[static_cast<std::size_t>(j)], 0.0);
        }
    }

    std::vector<double> potential;
    if (!net.run(source, sink, potential)) {
        throw Error(ErrorKind::kSolver, "solve_allocation: augmentation guard exceeded");
    }

    AllocationResult result;
    result.allocation.x = Matrix(inst.m, inst.n);
    result.allocation.u.assign(inst.m, 0.0);
    for (std::size_t i = 0; i < inst.m; ++i) {
        for (std::size_t j = 0; j < inst.n; ++j) {
            const int arc = serve_arc[i * inst.n + j];
            if (arc >= 0) result.allocation.x(i, j) = net.flow(static_cast<int>(1 + i), arc);
        }
        if (drop_arc[i] >= 0) result.allocation.u[i] = net.flow(static_cast<int>(1 + i), drop_arc[i]);
    }
    result.objective = delay_cost(inst, result.allocation) + unmet_cost(inst, result.allocation);

    result.duals.area.assign(potential.begin() + 1, potential.begin() + 1 + m);
    result.duals.en.assign(potential.begin() + 1 + m, potential.begin() + 1 + m + n);
    result.duals.sink = potential[static_cast<std::size_t>(sink)];
    return result;
}

double allocation_certificate_gap(const ProblemInstance& inst, const Placement& placement,
                                  const Allocation& a, const AllocationDuals& duals) {
    if (placement.size() != inst.n || a.x.rows() != inst.m || a.x.cols() != inst.n ||
        a.u.size() != inst.m || duals.area.size() != inst.m || duals.en.size() != inst.n) {
        throw_parameter("allocation_certificate_gap: dimension mismatch");
    }
    Solution probe{placement, a, {}};
    // Budget is irrelevant to the allocation LP.
    ProblemInstance unbudgeted = inst;
    unbudgeted.budget = std::numeric_limits<double>::max();
    const auto report = check_feasibility(unbudgeted, probe, 1e-9);
    if (!report.feasible()) {
        throw_parameter("allocation_certificate_gap: allocation infeasible for placement:\n" +
                        report.to_string());
    }

    constexpr double kFlowEps = 1e-12;
    double gap = 0.0;
    auto arc = [&](double cost, double pi_from, double pi_to, double flow, double spare) {
        const double rc = cost + pi_from - pi_to;
        if (spare > kFlowEps) gap = std::max(gap, -rc);
        if (flow > kFlowEps) gap = std::max(gap, rc);
    };

    for (std::size_t i = 0; i < inst.m; ++i) {
        if (!(inst.demand[i] > 0.0)) continue;
        for (std::size_t j = 0; j < inst.n; ++j) {
            if (!placement.open(j)) continue;
            arc(inst.delay_penalty * inst.delay(i, j), duals.area[i], duals.en[j], a.x(i, j), kInf);
        }
        arc(inst.unmet_penalty[i], duals.area[i], duals.sink, a.u[i], kInf);
    }
    for (std::size_t j = 0; j < inst.n; ++j) {
        if (!placement.open(j)) continue;
        double load = 0.0;
        for (std::size_t i = 0; i < inst.m; ++i) load += a.x(i, j);
        arc(0.0, duals.en[j], duals.sink, load, inst.capacity[j] - load);
    }
    return std::max(gap, 0.0);
}

}  // namespace qedge
