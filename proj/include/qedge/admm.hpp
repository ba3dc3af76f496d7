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
#include <span>
#include <string>
#include <vector>

#include "qedge/backend_select.hpp"
#include "qedge/instance.hpp"
#include "qedge/model.hpp"
#include "qedge/qubo.hpp"

namespace qedge {

struct QpConfig {
    double tol = 1e-9;  ///< gradient-mapping norm at which the block stops
    std::size_t max_iters = 20000;
};

struct AdmmConfig {
    /// Augmented-Lagrangian weight. Unset: mean(rho_m) / max(C_n), which makes
    /// the quadratic penalty of a one-capacity residual comparable to the
    /// unmet-demand price of that capacity.
    std::optional<double> rho_admm;
    std::size_t max_iters = 100;
    double tol_primal = 1e-3;  ///< multiplied by sqrt(N)
    double tol_dual = 1e-3;    ///< multiplied by sqrt(N)
    BackendConfig backend;
    BudgetConfig budget;
    QpConfig qp;
};

/// Penalty weight actually used for `config` on `instance`.
double resolve_rho_admm(const ProblemInstance& instance, const AdmmConfig& config);

struct AdmmTraceRow {
    std::size_t iter = 0;
    double primal_residual = 0.0;  ///< ||a - C o z||_2
    double dual_residual = 0.0;    ///< rho ||C o (z^k - z^{k-1})||_2
    double restored_total = 0.0;
    std::string z_bits;
    double backend_time_s = 0.0;
    std::vector<double> residual;  ///< a_n - C_n z_n after the continuous block
    std::vector<double> duals;     ///< y after the dual update
};

struct AdmmState {
    std::size_t iteration = 0;
    Placement z;
    Allocation allocation;
    std::vector<double> slack;
    std::vector<double> duals;
    std::vector<AdmmTraceRow> trace;
};

struct ContinuousIterate {
    Matrix x;
    std::vector<double> u;
    std::vector<double> s;
    std::size_t iterations = 0;
    double gradient_mapping_norm = 0.0;
};

/// Euclidean projection of v onto {w >= 0 : sum w = scale}.
std::vector<double> project_scaled_simplex(std::span<const double> v, double scale);

/// Continuous block: approximately minimizes
///   beta sum d x + sum rho u + sum_n [ y_n r_n + rho_admm/2 r_n^2 ],  r_n = sum_m x_{m,n} + s_n - C_n z_n
/// over per-area simplices {x_m, u_m >= 0, sum = lambda_m} and s >= 0.
/// Alternates the closed-form s update with projected-gradient steps on
/// (x, u) of length 1 / (rho_admm M). Warm-starts from `warm` when its shape
/// matches; the returned iterate satisfies every balance constraint exactly.
ContinuousIterate solve_continuous_block(const ProblemInstance& instance, const Placement& z,
                                         const ContinuousIterate& warm, std::span<const double> duals,
                                         double rho_admm, const QpConfig& config);

/// y_n + rho_admm (sum_m x_{m,n} + s_n - C_n z_n).
std::vector<double> dual_update(const ProblemInstance& instance, const AdmmState& state, double rho_admm);

/// Closes open ENs, most expensive first, until the budget holds, then
/// allocates exactly.
Solution restore_feasibility(const ProblemInstance& instance, const Placement& placement);

struct AdmmResult {
    Solution solution;  ///< restored solution of the best placement seen
    AdmmState state;
    bool converged = false;
    double rho_admm = 0.0;
};

/// Alternates the QUBO placement block, the continuous block and the dual
/// update from x = 0, u = lambda, s = 0, y = 0 until both residuals fall
/// under tolerance or max_iters is reached.
AdmmResult run_admm(const ProblemInstance& instance, const AdmmConfig& config, std::uint64_t seed);

/// CSV with columns iter,primal_residual,dual_residual,restored_total,z_bits,backend_time_s.
std::string trace_to_csv(const AdmmState& state);

}  // namespace qedge
