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

#include "qedge/admm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "qedge/alloc.hpp"
#include "qedge/rng.hpp"

namespace qedge {

double resolve_rho_admm(const ProblemInstance& inst, const AdmmConfig& cfg) {
    if (cfg.rho_admm) {
        if (!(*cfg.rho_admm > 0.0)) throw_parameter("rho_admm must be > 0");
        return *cfg.rho_admm;
    }
    double price = 0.0;
    if (inst.m > 0) price = std::accumulate(inst.unmet_penalty.begin(), inst.unmet_penalty.end(), 0.0) / double(inst.m);
    if (!(price > 0.0)) price = 1.0;
    const double cap = inst.n > 0 ? *std::max_element(inst.capacity.begin(), inst.capacity.end()) : 1.0;
    return price / cap;
}

std::vector<double> project_scaled_simplex(std::span<const double> v, double scale) {
    if (!(scale >= 0.0)) throw_parameter("project_scaled_simplex: scale must be >= 0");
    std::vector<double> w(v.size(), 0.0);
    if (scale == 0.0 || v.empty()) return w;

    std::vector<double> sorted(v.begin(), v.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        cumulative += sorted[k];
        const double t = (cumulative - scale) / static_cast<double>(k + 1);
        if (sorted[k] - t > 0.0) theta = t;
    }
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = std::max(v[i] - theta, 0.0);
    return w;
}

namespace {

std::vector<double> column_load(const Matrix& x) {
    std::vector<double> load(x.cols(), 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) load[j] += x(i, j);
    }
    return load;
}

double open_capacity(const ProblemInstance& inst, const Placement& z, std::size_t j) {
    return z.open(j) ? inst.capacity[j] : 0.0;
}

}  // namespace

ContinuousIterate solve_continuous_block(const ProblemInstance& inst, const Placement& z,
                                         const ContinuousIterate& warm, std::span<const double> y,
                                         double rho, const QpConfig& cfg) {
    if (!(rho > 0.0)) throw_parameter("solve_continuous_block: rho_admm must be > 0");
    if (z.size() != inst.n || y.size() != inst.n) throw_parameter("solve_continuous_block: dimension mismatch");
    const std::size_t m = inst.m;
    const std::size_t n = inst.n;

    ContinuousIterate it;
    it.x = Matrix(m, n);
    it.u = inst.demand;
    std::vector<double> v(n + 1);
    if (warm.x.rows() == m && warm.x.cols() == n && warm.u.size() == m) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) v[j] = warm.x(i, j);
            v[n] = warm.u[i];
            const auto w = project_scaled_simplex(v, inst.demand[i]);
            for (std::size_t j = 0; j < n; ++j) it.x(i, j) = w[j];
            it.u[i] = w[n];
        }
    }

    std::vector<double> target(n);
    for (std::size_t j = 0; j < n; ++j) target[j] = open_capacity(inst, z, j);
    it.s.assign(n, 0.0);
    auto update_slack = [&](const std::vector<double>& load) {
        for (std::size_t j = 0; j < n; ++j) it.s[j] = std::max(0.0, target[j] - y[j] / rho - load[j]);
    };

    const double lipschitz = rho * static_cast<double>(std::max<std::size_t>(m, 1));
    std::vector<double> grad(n);
    for (std::size_t iter = 0; iter < cfg.max_iters; ++iter) {
        const auto load = column_load(it.x);
        update_slack(load);
        for (std::size_t j = 0; j < n; ++j) grad[j] = y[j] + rho * (load[j] + it.s[j] - target[j]);

        double moved = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                v[j] = it.x(i, j) - (inst.delay_penalty * inst.delay(i, j) + grad[j]) / lipschitz;
            }
            v[n] = it.u[i] - inst.unmet_penalty[i] / lipschitz;
            const auto w = project_scaled_simplex(v, inst.demand[i]);
            for (std::size_t j = 0; j < n; ++j) {
                moved += (w[j] - it.x(i, j)) * (w[j] - it.x(i, j));
                it.x(i, j) = w[j];
            }
            moved += (w[n] - it.u[i]) * (w[n] - it.u[i]);
            it.u[i] = w[n];
        }
        it.iterations = iter + 1;
        it.gradient_mapping_norm = lipschitz * std::sqrt(moved);
        if (it.gradient_mapping_norm < cfg.tol) break;
    }
    update_slack(column_load(it.x));
    return it;
}

std::vector<double> dual_update(const ProblemInstance& inst, const AdmmState& state, double rho) {
    const auto load = column_load(state.allocation.x);
    std::vector<double> y = state.duals;
    for (std::size_t j = 0; j < inst.n; ++j) {
        y[j] += rho * (load[j] + state.slack[j] - open_capacity(inst, state.z, j));
    }
    return y;
}

Solution restore_feasibility(const ProblemInstance& inst, const Placement& placement) {
    if (placement.size() != inst.n) throw_parameter("restore_feasibility: placement length != n");
    Placement z = placement;
    while (placement_cost(inst, z) > inst.budget) {
        std::size_t drop = inst.n;
        for (std::size_t j = 0; j < inst.n; ++j) {
            if (z.open(j) && (drop == inst.n || inst.placement_cost[j] > inst.placement_cost[drop])) drop = j;
        }
        z.z[drop] = 0;
    }
    auto alloc = solve_allocation(inst, z);
    Solution s{std::move(z), std::move(alloc.allocation), {}};
    s.cost = total_objective(inst, s);
    return s;
}

AdmmResult run_admm(const ProblemInstance& inst, const AdmmConfig& cfg, std::uint64_t seed) {
    validate(inst);
    if (cfg.max_iters < 1) throw_parameter("run_admm: max_iters must be >= 1");
    if (!(cfg.tol_primal > 0.0) || !(cfg.tol_dual > 0.0)) throw_parameter("run_admm: tolerances must be > 0");
    const double rho = resolve_rho_admm(inst, cfg);
    const std::size_t n = inst.n;
    const double scale = std::sqrt(static_cast<double>(std::max<std::size_t>(n, 1)));

    AdmmResult result;
    result.rho_admm = rho;
    AdmmState& st = result.state;
    st.z = Placement(n);
    st.allocation.x = Matrix(inst.m, n);
    st.allocation.u = inst.demand;
    st.slack.assign(n, 0.0);
    st.duals.assign(n, 0.0);

    ContinuousIterate warm{st.allocation.x, st.allocation.u, st.slack, 0, 0.0};
    std::map<Bits, Solution> restored;
    const Solution* best = nullptr;

    for (std::size_t k = 1; k <= cfg.max_iters; ++k) {
        const Qubo qubo = build_z_subproblem_qubo(inst, st.allocation.x, st.slack, st.duals, rho, cfg.budget);
        QuboSolverResult placement_block;
        try {
            placement_block = solve_qubo(qubo, cfg.backend, Rng(seed, Rng::Stream::kSolver, static_cast<std::uint32_t>(k)).next_u64());
        } catch (const Error& e) {
            throw Error(e.kind(), "ADMM iteration " + std::to_string(k) + ": " + e.what());
        }

        Placement z(Bits(placement_block.best_bitstring.begin(), placement_block.best_bitstring.begin() + static_cast<std::ptrdiff_t>(n)));
        double dual_res = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double d = inst.capacity[j] * (double(z.z[j]) - double(st.z.z[j]));
            dual_res += d * d;
        }
        dual_res = rho * std::sqrt(dual_res);
        st.z = std::move(z);

        warm = solve_continuous_block(inst, st.z, warm, st.duals, rho, cfg.qp);
        st.allocation.x = warm.x;
        st.allocation.u = warm.u;
        st.slack = warm.s;

        const auto load = column_load(st.allocation.x);
        std::vector<double> residual(n);
        double primal = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            residual[j] = load[j] + st.slack[j] - open_capacity(inst, st.z, j);
            primal += residual[j] * residual[j];
        }
        primal = std::sqrt(primal);
        st.duals = dual_update(inst, st, rho);
        st.iteration = k;

        auto [pos, inserted] = restored.try_emplace(st.z.z);
        if (inserted) pos->second = restore_feasibility(inst, st.z);
        const Solution& candidate = pos->second;
        if (!best || candidate.cost.total < best->cost.total) best = &candidate;

        st.trace.push_back({k, primal, dual_res, candidate.cost.total, st.z.to_string(), placement_block.wall_time_s,
                            std::move(residual), st.duals});

        if (primal < cfg.tol_primal * scale && dual_res < cfg.tol_dual * scale) {
            result.converged = true;
            break;
        }
    }
    result.solution = *best;
    return result;
}

std::string trace_to_csv(const AdmmState& state) {
    std::ostringstream out;
    out.precision(17);
    out << "iter,primal_residual,dual_residual,restored_total,z_bits,backend_time_s\n";
    for (const auto& r : state.trace) {
        out << r.iter << ',' << r.primal_residual << ',' << r.dual_residual << ',' << r.restored_total << ','
            << r.z_bits << ',' << r.backend_time_s << '\n';
    }
    return out.str();
}

}  // namespace qedge
