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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qedge/admm.hpp"
#include "qedge/alloc.hpp"
#include "qedge/backends.hpp"
#include "qedge/exact.hpp"
#include "qedge/qaoa.hpp"
#include "qedge/report.hpp"
#include "support/oracles.hpp"

namespace {

using namespace qedge;
using json = nlohmann::json;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, auto... args) {
    std::array<char, 512> buf{};
    std::snprintf(buf.data(), buf.size(), f, args...);
    return buf.data();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t k = v.size() / 2;
    return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

struct CliRun {
    int code = -1;
    std::string out;
    double seconds = 0.0;
};

CliRun cli(const std::string& args) {
    const std::string cmd = std::string(QEDGE_CLI_PATH) + " " + args + " 2>/dev/null";
    CliRun r;
    const auto start = Clock::now();
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.seconds = seconds_since(start);
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome oracle_cross_validation() {
    const auto start = Clock::now();
    std::mt19937_64 rng(1001);
    int matched = 0;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto inst = testing::random_integer_instance(rng, 6, 3, 5, 6);
        const double err = std::abs(enumerate_solve(inst).cost.total - testing::brute_force_total(inst));
        worst = std::max(worst, err);
        matched += err <= 1e-6;
    }
    const double secs = seconds_since(start);
    return {matched == 100 && secs < 60.0, fmt("%d/100 match, max |diff| %.2e, %.2f s", matched, worst, secs)};
}

Outcome allocation_certificates() {
    std::mt19937_64 rng(2002);
    double worst = 0.0;
    int ok = 0;
    for (int i = 0; i < 200; ++i) {
        ProblemInstance inst;
        if (i % 2 == 0) {
            const std::size_t m = 1 + rng() % 30;
            const std::size_t n = 1 + rng() % 6;
            inst = generate_instance({.areas = m, .ens = n, .seed = rng()});
        } else {
            inst = testing::random_integer_instance(rng, 8, 5, 9, 12);
        }
        Placement z(inst.n);
        for (auto& b : z.z) b = rng() & 1;
        const auto res = solve_allocation(inst, z);
        const double gap = allocation_certificate_gap(inst, z, res.allocation, res.duals);
        worst = std::max(worst, gap);
        ok += gap <= 1e-9;
    }
    return {ok == 200, fmt("%d/200 certified, worst gap %.2e", ok, worst)};
}

Outcome placement_agreement() {
    bool pass = true;
    std::string detail;
    for (std::size_t m : {5u, 50u}) {
        int same = 0;
        std::vector<double> gaps;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto inst = generate_instance({.areas = m, .ens = 3, .seed = seed});
            const auto exact = enumerate_solve(inst);
            const auto admm = run_admm(inst, {}, seed);
            same += admm.solution.placement == exact.placement;
            gaps.push_back(relative_gap(admm.solution.cost.total, exact.cost.total));
        }
        const double med = median(gaps);
        pass &= same >= 8 && med <= 0.05;
        detail += fmt("M=%zu: %d/10 same placement, median gap %.4f; ", m, same, med);
    }
    return {pass, detail};
}

Outcome admm_convergence() {
    bool pass = true;
    std::string detail;
    for (std::size_t m : {5u, 50u}) {
        int converged = 0;
        std::size_t worst = 0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto inst = generate_instance({.areas = m, .ens = 3, .seed = seed});
            const auto res = run_admm(inst, {}, seed);
            converged += res.converged && res.state.iteration <= 50;
            worst = std::max(worst, res.state.iteration);
        }
        pass &= converged >= 9;
        detail += fmt("M=%zu: %d/10 within 50 iterations (max %zu); ", m, converged, worst);
    }
    return {pass, detail};
}

Outcome nested_monotonicity() {
    SweepSpec spec;
    spec.areas = {5, 10, 20, 30, 40, 50};
    for (std::uint64_t s = 1; s <= 10; ++s) spec.seeds.push_back(s);
    spec.methods = {Method::kExact};
    spec.base.ens = 3;
    spec.nested = true;
    const auto rows = run_sweep(spec);
    std::map<std::uint64_t, std::vector<std::pair<std::size_t, double>>> by_seed;
    for (const auto& r : rows) by_seed[r.seed].push_back({r.m, r.total});
    int monotone = 0;
    for (auto& [seed, series] : by_seed) {
        std::sort(series.begin(), series.end());
        bool ok = series.size() == spec.areas.size();
        for (std::size_t k = 1; k < series.size(); ++k) ok &= series[k].second >= series[k - 1].second;
        monotone += ok;
    }
    return {monotone == 10, fmt("%d/10 seeds non-decreasing over M in {5..50}", monotone)};
}

Outcome qaoa_numerics() {
    std::mt19937_64 rng(3003);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::normal_distribution<double> g;

    double worst_norm = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t nq = 1 + rng() % 10;
        const std::size_t p = 1 + rng() % 5;
        CostSpectrum e(std::size_t{1} << nq);
        for (auto& v : e) v = 3.0 * g(rng);
        QaoaParams params;
        for (std::size_t l = 0; l < p; ++l) {
            params.cost_angles.push_back(angle(rng));
            params.mixer_angles.push_back(angle(rng));
        }
        double norm = 0.0;
        for (auto a : prepare_state(nq, e, params)) norm += std::norm(a);
        worst_norm = std::max(worst_norm, std::abs(norm - 1.0));
    }

    double worst_expect = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t nq = 1 + rng() % 6;
        const Qubo q = testing::random_qubo(rng, nq, -2.0, 2.0);
        QaoaParams params;
        for (std::size_t l = 0; l < 1 + rng() % 3; ++l) {
            params.cost_angles.push_back(angle(rng));
            params.mixer_angles.push_back(angle(rng));
        }
        const auto psi = prepare_state(nq, build_spectrum(q), params);
        const double dense = testing::dense_expectation(testing::dense_cost_hamiltonian(q), psi);
        worst_expect = std::max(worst_expect, std::abs(evaluate_expectation(psi, build_spectrum(q)) - dense));
    }

    double worst_zero = 0.0;
    for (std::size_t nq = 1; nq <= 8; ++nq) {
        CostSpectrum e(std::size_t{1} << nq);
        for (auto& v : e) v = g(rng);
        const QaoaParams zero{std::vector<double>(3, 0.0), std::vector<double>(3, 0.0)};
        const auto init = init_uniform_state(nq);
        const auto out = prepare_state(nq, e, zero);
        for (std::size_t j = 0; j < init.size(); ++j) worst_zero = std::max(worst_zero, std::abs(out[j] - init[j]));
    }
    const bool pass = worst_norm <= 1e-10 && worst_expect <= 1e-10 && worst_zero <= 1e-12;
    return {pass, fmt("norm err %.1e, expectation err %.1e, zero-angle err %.1e", worst_norm, worst_expect,
                      worst_zero)};
}

Outcome qaoa_quality() {
    const auto start = Clock::now();
    std::mt19937_64 rng(4004);
    int optimal = 0;
    int below = 0;
    int beats_random = 0;
    for (int i = 0; i < 100; ++i) {
        const Qubo q = testing::random_qubo(rng, 4);
        const double opt = testing::brute_force_min(q);
        const auto r = solve_qaoa(q, {.depth = 3, .shots = 1024, .optimizer = {.restarts = 5}}, std::uint64_t(i));
        optimal += std::abs(r.best_energy - opt) <= 1e-9;
        below += r.best_energy < opt - 1e-9;
        double random_best = std::numeric_limits<double>::infinity();
        for (int s = 0; s < 1024; ++s) random_best = std::min(random_best, testing::direct_energy(q, rng() & 15));
        beats_random += r.best_energy <= random_best + 1e-12;
    }
    const double secs = seconds_since(start);
    const bool pass = optimal >= 70 && below == 0 && beats_random == 100 && secs < 300.0;
    return {pass, fmt("%d/100 optimal, %d below optimum, %d/100 <= random-1024 best, %.1f s", optimal, below,
                      beats_random, secs)};
}

Outcome budget_penalty_soundness() {
    std::mt19937_64 rng(5005);
    std::uniform_real_distribution<double> cost(0.05, 1.0);
    long checked = 0;
    long failures = 0;
    for (std::size_t n = 1; n <= 4; ++n) {
        for (std::size_t k = 1; k <= 4; ++k) {
            for (int draw = 0; draw < 8; ++draw) {
                std::vector<double> h(n);
                double all = 0.0;
                for (auto& c : h) all += (c = cost(rng));
                const double budget = std::uniform_real_distribution<double>(0.1 * all, all)(rng);
                const double mu = std::uniform_real_distribution<double>(0.5, 20.0)(rng);
                const double delta = budget_slack_step(budget, k);
                const Qubo q = encode_budget_penalty(h, budget, mu, k);
                for (std::uint64_t zmask = 0; zmask < (std::uint64_t{1} << n); ++zmask) {
                    double spend = 0.0;
                    for (std::size_t j = 0; j < n; ++j) spend += ((zmask >> j) & 1) * h[j];
                    double min_pen = std::numeric_limits<double>::infinity();
                    bool lower_ok = true;
                    const double violation = spend - budget;
                    for (std::uint64_t w = 0; w < (std::uint64_t{1} << k); ++w) {
                        const double pen = qubo_eval_index(q, zmask | (w << n));
                        min_pen = std::min(min_pen, pen);
                        if (violation > delta) {
                            const double bound = mu * (violation - delta / 2) * (violation - delta / 2);
                            lower_ok &= pen >= bound - 1e-9 * (1 + bound);
                        }
                    }
                    ++checked;
                    if (spend <= budget) {
                        const double bound = mu * delta * delta / 4;
                        failures += min_pen > bound + 1e-9 * (1 + bound);
                    } else if (violation > delta) {
                        failures += !lower_ok;
                    }
                }
            }
        }
    }
    return {failures == 0, fmt("%ld placements checked over N<=4, K in 1..4, %ld bound violations", checked, failures)};
}

Outcome anneal_quality() {
    std::mt19937_64 rng(6006);
    int matched = 0;
    for (int i = 0; i < 100; ++i) {
        const Qubo q = testing::random_qubo(rng, 8);
        const auto r = solve_anneal(q, {}, std::uint64_t(i));
        matched += std::abs(r.best_energy - testing::brute_force_min(q)) <= 1e-9;
    }
    return {matched >= 95, fmt("%d/100 optimal", matched)};
}

Outcome qaoa_pipeline(const fs::path& dir) {
    int within = 0;
    int feasible = 0;
    double slowest = 0.0;
    std::string gaps;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto inst_path = (dir / fmt("qaoa_%llu.json", (unsigned long long)seed)).string();
        if (cli(fmt("generate --areas 5 --ens 3 --seed %llu -o %s", (unsigned long long)seed, inst_path.c_str())).code)
            return {false, "generate failed"};
        const auto r = cli("solve -i " + inst_path + " --method admm --backend qaoa --slack-bits 4 --baseline exact");
        slowest = std::max(slowest, r.seconds);
        if (r.code != 0) continue;
        const auto doc = json::parse(r.out);
        const auto inst = load_instance(inst_path);
        const auto sol = solution_from_json(doc["solution"].dump());
        const bool ok = check_feasibility(inst, sol).feasible() && r.seconds < 120.0;
        feasible += ok;
        const double gap = doc["baseline"]["gap"].get<double>();
        within += ok && gap <= 0.10;
        gaps += fmt("%.3f ", gap);
    }
    return {within >= 7 && feasible == 10,
            fmt("%d/10 feasible with gap <= 10%%, slowest run %.2f s, gaps [ %s]", within, slowest, gaps.c_str())};
}

std::string without_timing(const std::string& report) {
    auto doc = json::parse(report);
    doc.erase("timing");
    return doc.dump();
}

std::string drop_last_column(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
    return out;
}

Outcome determinism(const fs::path& dir) {
    const std::string inst = (dir / "det.json").string();
    std::vector<std::string> mismatches;
    int compared = 0;
    auto twice = [&](const std::string& name, const std::string& args, const std::function<std::string(const std::string&)>& norm) {
        const auto a = cli(args);
        const auto b = cli(args);
        ++compared;
        if (a.code != 0 || b.code != 0 || norm(a.out) != norm(b.out)) mismatches.push_back(name);
    };
    auto same = [](const std::string& s) { return s; };

    twice("generate", "generate --areas 8 --ens 3 --seed 21", same);
    if (cli("generate --areas 8 --ens 3 --seed 21 -o " + inst).code != 0) return {false, "generate failed"};
    twice("solve exact", "solve -i " + inst + " --method exact --baseline exact", without_timing);
    for (const char* backend : {"exhaustive", "anneal", "qaoa"}) {
        twice(std::string("solve admm ") + backend,
              "solve -i " + inst + " --method admm --backend " + backend + " --seed 3 --baseline exact", without_timing);
    }
    const auto trace_a = (dir / "ta.csv").string();
    const auto trace_b = (dir / "tb.csv").string();
    cli("solve -i " + inst + " --method admm --backend anneal --seed 3 --trace " + trace_a);
    cli("solve -i " + inst + " --method admm --backend anneal --seed 3 --trace " + trace_b);
    ++compared;
    if (drop_last_column(slurp(trace_a)) != drop_last_column(slurp(trace_b))) mismatches.push_back("trace csv");
    twice("sweep", "sweep --areas 5,10 --seeds 1,2,3 --methods exact,admm --backend anneal", drop_last_column);
    twice("qubo", "qubo -i " + (dir / "q.txt").string() + " --backend anneal --seed 4", same);

    std::string detail = fmt("%d commands compared", compared);
    for (const auto& m : mismatches) detail += ", differs: " + m;
    return {mismatches.empty(), detail};
}

}  // namespace

int main() {
    const fs::path dir = fs::temp_directory_path() / ("qedge_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::ofstream(dir / "q.txt") << "# num_vars 3\n0 0 -1\n0 1 2\n1 2 -0.5\n2 2 0.25\n";

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 oracle cross-validation", oracle_cross_validation},
        {"2 allocation optimality certificates", allocation_certificates},
        {"3 placement agreement with exact (M=5, M=50)", placement_agreement},
        {"4 ADMM convergence within 50 iterations", admm_convergence},
        {"5 nested sweep monotonicity", nested_monotonicity},
        {"6 QAOA numerical correctness", qaoa_numerics},
        {"7 QAOA solution quality", qaoa_quality},
        {"8 budget penalty soundness", budget_penalty_soundness},
        {"9 simulated annealing quality", anneal_quality},
        {"10 end-to-end QAOA pipeline", [&] { return qaoa_pipeline(dir); }},
        {"11 determinism", [&] { return determinism(dir); }},
    };

    int failed = 0;
    for (const auto& [name, check] : criteria) {
        const auto start = Clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("[%s] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(),
                    seconds_since(start));
        std::fflush(stdout);
    }
    fs::remove_all(dir);
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
