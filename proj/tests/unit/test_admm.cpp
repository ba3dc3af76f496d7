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

#include <gtest/gtest.h>

#include <numeric>

#include "qedge/admm.hpp"
#include "qedge/alloc.hpp"
#include "qedge/exact.hpp"
#include "support/oracles.hpp"

namespace qedge {
namespace {

TEST(Simplex, FixedPointsAndHandCases) {
    const std::vector<double> on{0.25, 0.5, 0.25};
    EXPECT_EQ(project_scaled_simplex(on, 1.0), on);
    EXPECT_EQ(project_scaled_simplex(std::vector<double>{2, 0}, 1.0), (std::vector<double>{1, 0}));
    EXPECT_EQ(project_scaled_simplex(std::vector<double>{3, -1, 7}, 0.0), (std::vector<double>{0, 0, 0}));
    EXPECT_THROW(project_scaled_simplex(std::vector<double>{1}, -1.0), Error);
    const auto w = project_scaled_simplex(std::vector<double>{0.5, 0.5, -2.0}, 3.0);
    EXPECT_NEAR(w[0], 1.5, 1e-15);
    EXPECT_NEAR(w[1], 1.5, 1e-15);
    EXPECT_EQ(w[2], 0.0);
}

TEST(Simplex, IsTheClosestPoint) {
    std::mt19937_64 rng(10);
    std::normal_distribution<double> g(0.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(4);
        for (auto& a : v) a = g(rng);
        const double scale = std::abs(g(rng));
        const auto w = project_scaled_simplex(v, scale);
        EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), scale, 1e-12);
        // Optimality: v - w = theta on the support and <= theta off it.
        double theta = 0.0;
        bool have = false;
        for (std::size_t i = 0; i < 4; ++i) {
            EXPECT_GE(w[i], 0.0);
            if (w[i] > 0) {
                if (have) EXPECT_NEAR(v[i] - w[i], theta, 1e-12);
                theta = v[i] - w[i];
                have = true;
            }
        }
        for (std::size_t i = 0; i < 4; ++i) {
            if (w[i] == 0 && have) EXPECT_LE(v[i], theta + 1e-12);
        }
    }
}

double block_objective(const ProblemInstance& inst, const ContinuousIterate& it) {
    return delay_cost(inst, {it.x, it.u}) + unmet_cost(inst, {it.x, it.u});
}

TEST(ContinuousBlock, CheapDroppingKeepsEverythingDropped) {
    auto inst = testing::toy1();
    inst.unmet_penalty = {0.005, 0.005};
    const auto it = solve_continuous_block(inst, Placement(2), {}, std::vector<double>{0, 0}, 0.1, {});
    EXPECT_EQ(it.x, Matrix(2, 2));
    EXPECT_EQ(it.u, inst.demand);
    EXPECT_EQ(it.s, (std::vector<double>{0, 0}));
}

TEST(ContinuousBlock, NothingOpenStillRoutesWhenDroppingIsDear) {
    // Closed sites only carry the augmented penalty, so with an expensive drop
    // the block sends some load to them; that load is what later opens a site.
    const auto inst = testing::toy1();
    const auto it = solve_continuous_block(inst, Placement(2), {}, std::vector<double>{0, 0}, 0.1, {});
    double routed = 0.0;
    for (double v : it.x.data()) routed += v;
    EXPECT_GT(routed, 0.0);
    EXPECT_LT(block_objective(inst, it), 8.0);
}

TEST(ContinuousBlock, TinyPenaltyTendsToUncapacitatedRouting) {
    // Closed sites are only discouraged through the augmented term, so as
    // rho_admm vanishes the block approaches routing to every site freely.
    const auto inst = testing::toy1();
    auto free_routing = inst;
    free_routing.capacity = {1e9, 1e9};
    const double limit = solve_allocation(free_routing, Placement({1, 1})).objective;
    EXPECT_NEAR(limit, 0.08, 1e-12);
    const auto it = solve_continuous_block(inst, Placement({0, 1}), {}, std::vector<double>{0, 0}, 1e-7, {});
    EXPECT_NEAR(block_objective(inst, it), limit, 1e-6);
}

TEST(ContinuousBlock, BalanceAlwaysExact) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto inst = generate_instance({.areas = 8, .ens = 3, .seed = seed});
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> g(0.0, 0.2);
        std::vector<double> y{g(rng), g(rng), g(rng)};
        Placement z({std::uint8_t(seed & 1), std::uint8_t((seed >> 1) & 1), 1});
        const auto it = solve_continuous_block(inst, z, {}, y, 0.01, {.tol = 1e-9, .max_iters = 500});
        for (std::size_t i = 0; i < inst.m; ++i) {
            double sum = it.u[i];
            for (std::size_t j = 0; j < inst.n; ++j) {
                EXPECT_GE(it.x(i, j), 0.0);
                sum += it.x(i, j);
            }
            EXPECT_GE(it.u[i], 0.0);
            EXPECT_NEAR(sum, inst.demand[i], 1e-9);
        }
        for (double s : it.s) EXPECT_GE(s, 0.0);
    }
}

TEST(DualUpdate, Formula) {
    ProblemInstance inst = testing::zero_demand_instance(1, 2);
    inst.demand = {0};
    inst.capacity = {1, 1};
    AdmmState st;
    st.z = Placement({0, 1});
    st.allocation = {Matrix(1, 2), {0}};
    st.slack = {0, 1};
    st.duals = {0.5, -0.5};
    // residual (0, 0)
    EXPECT_EQ(dual_update(inst, st, 10.0), st.duals);

    st.slack = {1, 0};
    st.duals = {0, 0};
    // residual (1, -1)
    const auto y = dual_update(inst, st, 10.0);
    EXPECT_EQ(y, (std::vector<double>{10, -10}));
    st.duals = y;
    EXPECT_EQ(dual_update(inst, st, 10.0), (std::vector<double>{20, -20}));
}

TEST(Restore, FeasiblePlacementKept) {
    const auto inst = testing::toy1();
    const auto sol = restore_feasibility(inst, Placement({0, 1}));
    EXPECT_EQ(sol.placement, Placement({0, 1}));
    EXPECT_NEAR(sol.cost.total, 0.67, 1e-12);
}

TEST(Restore, ClosesMostExpensiveFirst) {
    const auto inst = testing::toy1();
    const auto sol = restore_feasibility(inst, Placement({1, 1}));
    EXPECT_EQ(sol.placement, Placement({1, 0}));
    EXPECT_NEAR(sol.cost.total, 4.35, 1e-12);
}

TEST(Restore, EmptyPlacement) {
    const auto inst = testing::toy1();
    const auto sol = restore_feasibility(inst, Placement(2));
    EXPECT_EQ(sol.allocation.x, Matrix(2, 2));
    EXPECT_EQ(sol.allocation.u, inst.demand);
}

TEST(RunAdmm, ToyMatchesExact) {
    const auto inst = testing::toy1();
    const auto res = run_admm(inst, {}, 0);
    EXPECT_EQ(res.solution.placement, Placement({0, 1}));
    EXPECT_NEAR(res.solution.cost.total, enumerate_solve(inst).cost.total, 1e-12);
    EXPECT_NEAR(res.solution.cost.total, 0.67, 1e-12);
}

TEST(RunAdmm, ZeroDemandConvergesImmediately) {
    const auto inst = testing::zero_demand_instance(3, 2);
    const auto res = run_admm(inst, {}, 0);
    EXPECT_TRUE(res.converged);
    EXPECT_EQ(res.state.iteration, 1u);
    EXPECT_EQ(res.solution.placement, Placement(2));
    EXPECT_EQ(res.solution.cost.total, 0.0);
}

TEST(RunAdmm, SameSeedSameTrace) {
    const auto inst = generate_instance({.areas = 6, .ens = 3, .seed = 2});
    AdmmConfig cfg;
    cfg.backend.kind = BackendKind::kAnneal;
    const auto a = run_admm(inst, cfg, 17);
    const auto b = run_admm(inst, cfg, 17);
    ASSERT_EQ(a.state.trace.size(), b.state.trace.size());
    for (std::size_t k = 0; k < a.state.trace.size(); ++k) {
        EXPECT_EQ(a.state.trace[k].primal_residual, b.state.trace[k].primal_residual);
        EXPECT_EQ(a.state.trace[k].dual_residual, b.state.trace[k].dual_residual);
        EXPECT_EQ(a.state.trace[k].z_bits, b.state.trace[k].z_bits);
        EXPECT_EQ(a.state.trace[k].duals, b.state.trace[k].duals);
    }
    EXPECT_EQ(a.solution.cost.total, b.solution.cost.total);
}

TEST(RunAdmm, RhoResolution) {
    const auto inst = testing::toy1();
    EXPECT_DOUBLE_EQ(resolve_rho_admm(inst, {}), 1.0 / 10.0);
    AdmmConfig cfg;
    cfg.rho_admm = 2.5;
    EXPECT_EQ(resolve_rho_admm(inst, cfg), 2.5);
    cfg.rho_admm = 0.0;
    EXPECT_THROW(resolve_rho_admm(inst, cfg), Error);
}

TEST(RunAdmm, SolutionIsAlwaysFeasible) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto inst = generate_instance({.areas = 10, .ens = 4, .seed = seed});
        inst.budget = 0.45;
        const auto res = run_admm(inst, {}, seed);
        EXPECT_TRUE(check_feasibility(inst, res.solution).feasible());
        EXPECT_GE(res.solution.cost.total, enumerate_solve(inst).cost.total - 1e-12);
    }
}

TEST(RunAdmm, TraceCsvHasOneRowPerIteration) {
    const auto res = run_admm(testing::toy1(), {}, 0);
    const auto csv = trace_to_csv(res.state);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), static_cast<long>(res.state.iteration + 1));
    EXPECT_EQ(csv.rfind("iter,primal_residual", 0), 0u);
}

}  // namespace
}  // namespace qedge
