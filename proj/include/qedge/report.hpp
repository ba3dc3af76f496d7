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

#include "qedge/admm.hpp"
#include "qedge/exact.hpp"
#include "qedge/instance.hpp"
#include "qedge/model.hpp"

namespace qedge {

enum class Method { kExact, kAdmm };

const char* method_name(Method method);
Method parse_method(const std::string& name);

/// Everything needed to reproduce a solve. Round-trips through JSON; the
/// report embeds it verbatim as "config".
struct SolveOptions {
    Method method = Method::kExact;
    std::uint64_t seed = 0;
    bool exact_baseline = false;
    AdmmConfig admm;
    ExactOptions exact;
};

std::string solve_options_to_json(const SolveOptions& options);
/// Missing keys keep their defaults; unknown keys are rejected.
SolveOptions solve_options_from_json(const std::string& text);

struct RunReport {
    std::string instance_ref;
    std::uint64_t instance_seed = 0;
    std::size_t m = 0;
    std::size_t n = 0;
    SolveOptions options;
    Solution solution;
    std::optional<double> exact_total;
    std::optional<double> gap;
    std::size_t iterations = 0;
    bool converged = true;
    double rho_admm = 0.0;
    std::string trace_csv;  ///< ADMM only

    double solve_time_s = 0.0;
    double baseline_time_s = 0.0;
    double backend_time_s = 0.0;
};

/// (heuristic - exact) / max(exact, 1e-12).
double relative_gap(double heuristic_total, double exact_total);

/// Runs the configured method (and optional exact baseline). The solution is
/// re-checked with check_feasibility; an infeasible result throws
/// Error(kSolver).
RunReport run_solve(const ProblemInstance& instance, const SolveOptions& options, const std::string& instance_ref = "");

/// Report as JSON. Wall-clock values live under the "timing" key only.
std::string report_to_json(const RunReport& report);

struct SweepSpec {
    std::vector<std::size_t> areas;
    std::vector<std::uint64_t> seeds;
    std::vector<Method> methods;
    GenConfig base;  ///< areas and seed are overwritten per cell
    SolveOptions options;
    /// Generate once at max(areas) per seed and derive smaller sizes with
    /// restrict_areas.
    bool nested = true;
    /// 0: QEDGE_THREADS if set, else hardware concurrency.
    unsigned threads = 0;
};

struct SweepRow {
    std::size_t m = 0;
    std::uint64_t seed = 0;
    Method method = Method::kExact;
    std::string backend;
    double total = 0.0;
    std::optional<double> gap;
    std::size_t iterations = 0;
    bool converged = true;
    std::string placement;
    double time_s = 0.0;
};

std::vector<SweepRow> run_sweep(const SweepSpec& spec);
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace qedge
