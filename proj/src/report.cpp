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

#include "qedge/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <initializer_list>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace qedge {

using json = nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

[[noreturn]] void bad_options(const std::string& msg) {
    throw Error(ErrorKind::kParameter, "solve options: " + msg);
}

void only_keys(const json& obj, const char* where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) bad_options(std::string(where) + " must be an object");
    for (const auto& [key, value] : obj.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; });
        if (!known) bad_options(std::string("unknown key \"") + key + "\" in " + where);
    }
}

template <class T>
void read(const json& obj, const char* key, T& out) {
    if (auto it = obj.find(key); it != obj.end()) {
        try {
            out = it->get<T>();
        } catch (const json::exception& e) {
            bad_options(std::string("key \"") + key + "\": " + e.what());
        }
    }
}

template <class T>
void read(const json& obj, const char* key, std::optional<T>& out) {
    if (auto it = obj.find(key); it != obj.end()) {
        if (it->is_null()) {
            out.reset();
            return;
        }
        T v{};
        read(obj, key, v);
        out = v;
    }
}

template <class T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

}  // namespace

const char* method_name(Method method) { return method == Method::kExact ? "exact" : "admm"; }

Method parse_method(const std::string& name) {
    if (name == "exact") return Method::kExact;
    if (name == "admm") return Method::kAdmm;
    throw_parameter("unknown method \"" + name + "\" (expected exact or admm)");
}

std::string solve_options_to_json(const SolveOptions& o) {
    const auto& a = o.admm;
    json doc;
    doc["method"] = method_name(o.method);
    doc["seed"] = o.seed;
    doc["baseline"] = o.exact_baseline ? json("exact") : json(nullptr);
    doc["admm"] = {
        {"rho_admm", optional_json(a.rho_admm)},
        {"max_iters", a.max_iters},
        {"tol_primal", a.tol_primal},
        {"tol_dual", a.tol_dual},
        {"backend", backend_name(a.backend.kind)},
        {"anneal",
         {{"t_start", optional_json(a.backend.anneal.t_start)},
          {"t_end", optional_json(a.backend.anneal.t_end)},
          {"sweeps", optional_json(a.backend.anneal.sweeps)}}},
        {"qaoa",
         {{"depth", a.backend.qaoa.depth},
          {"shots", a.backend.qaoa.shots},
          {"restarts", a.backend.qaoa.optimizer.restarts},
          {"evals_per_layer", a.backend.qaoa.optimizer.evals_per_layer},
          {"xtol", a.backend.qaoa.optimizer.xtol},
          {"initial_step", a.backend.qaoa.optimizer.initial_step}}},
        {"budget",
         {{"slack_bits", a.budget.slack_bits},
          {"mu", optional_json(a.budget.mu)},
          {"drop_redundant", a.budget.drop_redundant}}},
        {"qp", {{"tol", a.qp.tol}, {"max_iters", a.qp.max_iters}}},
    };
    doc["exact"] = {{"max_n", o.exact.max_n}, {"threads", o.exact.threads}};
    return doc.dump(2);
}

SolveOptions solve_options_from_json(const std::string& text) {
    json doc;
    try {
        doc = text.empty() ? json::object() : json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::kParse, std::string("solve options: ") + e.what());
    }
    only_keys(doc, "options", {"method", "seed", "baseline", "admm", "exact"});

    SolveOptions o;
    std::string method = method_name(o.method);
    read(doc, "method", method);
    o.method = parse_method(method);
    read(doc, "seed", o.seed);
    if (auto it = doc.find("baseline"); it != doc.end() && !it->is_null()) {
        if (!it->is_string() || (*it != "exact" && *it != "none")) bad_options("baseline must be \"exact\", \"none\" or null");
        o.exact_baseline = *it == "exact";
    }

    if (auto it = doc.find("admm"); it != doc.end()) {
        const json& a = *it;
        only_keys(a, "admm", {"rho_admm", "max_iters", "tol_primal", "tol_dual", "backend", "anneal", "qaoa", "budget", "qp"});
        read(a, "rho_admm", o.admm.rho_admm);
        read(a, "max_iters", o.admm.max_iters);
        read(a, "tol_primal", o.admm.tol_primal);
        read(a, "tol_dual", o.admm.tol_dual);
        std::string backend = backend_name(o.admm.backend.kind);
        read(a, "backend", backend);
        o.admm.backend.kind = parse_backend(backend);
        if (auto an = a.find("anneal"); an != a.end()) {
            only_keys(*an, "admm.anneal", {"t_start", "t_end", "sweeps"});
            read(*an, "t_start", o.admm.backend.anneal.t_start);
            read(*an, "t_end", o.admm.backend.anneal.t_end);
            read(*an, "sweeps", o.admm.backend.anneal.sweeps);
        }
        if (auto q = a.find("qaoa"); q != a.end()) {
            only_keys(*q, "admm.qaoa", {"depth", "shots", "restarts", "evals_per_layer", "xtol", "initial_step"});
            auto& qc = o.admm.backend.qaoa;
            read(*q, "depth", qc.depth);
            read(*q, "shots", qc.shots);
            read(*q, "restarts", qc.optimizer.restarts);
            read(*q, "evals_per_layer", qc.optimizer.evals_per_layer);
            read(*q, "xtol", qc.optimizer.xtol);
            read(*q, "initial_step", qc.optimizer.initial_step);
        }
        if (auto b = a.find("budget"); b != a.end()) {
            only_keys(*b, "admm.budget", {"slack_bits", "mu", "drop_redundant"});
            read(*b, "slack_bits", o.admm.budget.slack_bits);
            read(*b, "mu", o.admm.budget.mu);
            read(*b, "drop_redundant", o.admm.budget.drop_redundant);
        }
        if (auto q = a.find("qp"); q != a.end()) {
            only_keys(*q, "admm.qp", {"tol", "max_iters"});
            read(*q, "tol", o.admm.qp.tol);
            read(*q, "max_iters", o.admm.qp.max_iters);
        }
    }
    if (auto it = doc.find("exact"); it != doc.end()) {
        only_keys(*it, "exact", {"max_n", "threads"});
        read(*it, "max_n", o.exact.max_n);
        read(*it, "threads", o.exact.threads);
    }
    return o;
}

double relative_gap(double heuristic_total, double exact_total) {
    return (heuristic_total - exact_total) / std::max(exact_total, 1e-12);
}

RunReport run_solve(const ProblemInstance& inst, const SolveOptions& options, const std::string& instance_ref) {
    RunReport r;
    r.instance_ref = instance_ref;
    r.instance_seed = inst.seed;
    r.m = inst.m;
    r.n = inst.n;
    r.options = options;

    const auto start = Clock::now();
    if (options.method == Method::kExact) {
        r.solution = enumerate_solve(inst, options.exact);
        r.iterations = 1;
        r.converged = true;
    } else {
        auto res = run_admm(inst, options.admm, options.seed);
        r.solution = std::move(res.solution);
        r.iterations = res.state.iteration;
        r.converged = res.converged;
        r.rho_admm = res.rho_admm;
        r.trace_csv = trace_to_csv(res.state);
        for (const auto& row : res.state.trace) r.backend_time_s += row.backend_time_s;
    }
    r.solve_time_s = seconds_since(start);

    if (options.exact_baseline) {
        const auto base_start = Clock::now();
        const Solution exact = options.method == Method::kExact ? r.solution : enumerate_solve(inst, options.exact);
        r.exact_total = exact.cost.total;
        r.gap = relative_gap(r.solution.cost.total, exact.cost.total);
        r.baseline_time_s = seconds_since(base_start);
    }

    const auto report = check_feasibility(inst, r.solution, kFeasibilityTol);
    if (!report.feasible()) {
        throw Error(ErrorKind::kSolver, "solution failed the feasibility re-check:\n" + report.to_string());
    }
    return r;
}

std::string report_to_json(const RunReport& r) {
    json doc;
    doc["instance"] = {{"ref", r.instance_ref}, {"seed", r.instance_seed}, {"m", r.m}, {"n", r.n}};
    doc["method"] = method_name(r.options.method);
    doc["backend"] = r.options.method == Method::kAdmm ? json(backend_name(r.options.admm.backend.kind)) : json(nullptr);
    doc["config"] = json::parse(solve_options_to_json(r.options));
    doc["solution"] = json::parse(solution_to_json(r.solution));
    doc["feasible"] = true;
    doc["iterations"] = r.iterations;
    doc["converged"] = r.converged;
    if (r.options.method == Method::kAdmm) doc["rho_admm_used"] = r.rho_admm;
    if (r.exact_total) {
        doc["baseline"] = {{"method", "exact"}, {"total", *r.exact_total}, {"gap", *r.gap}};
    } else {
        doc["baseline"] = nullptr;
    }
    doc["timing"] = {{"solve_s", r.solve_time_s}, {"baseline_s", r.baseline_time_s}, {"backend_s", r.backend_time_s}};
    return doc.dump(2) + "\n";
}

namespace {

unsigned sweep_threads(unsigned requested) {
    if (requested > 0) return requested;
    unsigned t = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("QEDGE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) t = std::min<unsigned>(t, static_cast<unsigned>(v));
    }
    return t;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (spec.areas.empty()) throw_parameter("sweep: empty area list");
    if (spec.seeds.empty()) throw_parameter("sweep: empty seed list");
    if (spec.methods.empty()) throw_parameter("sweep: empty method list");
    const bool want_gap = std::find(spec.methods.begin(), spec.methods.end(), Method::kAdmm) != spec.methods.end();

    struct Cell {
        std::size_t m;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (auto seed : spec.seeds) {
        for (auto m : spec.areas) cells.push_back({m, seed});
    }
    const std::size_t max_m = *std::max_element(spec.areas.begin(), spec.areas.end());

    std::vector<std::vector<SweepRow>> out(cells.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t c = next++; c < cells.size(); c = next++) {
            try {
                GenConfig g = spec.base;
                g.seed = cells[c].seed;
                g.areas = spec.nested ? max_m : cells[c].m;
                ProblemInstance inst = generate_instance(g);
                if (spec.nested) inst = restrict_areas(inst, cells[c].m);

                std::optional<double> exact_total;
                for (Method method : spec.methods) {
                    SolveOptions o = spec.options;
                    o.method = method;
                    o.exact_baseline = false;
                    const RunReport r = run_solve(inst, o);
                    if (method == Method::kExact) exact_total = r.solution.cost.total;
                    SweepRow row;
                    row.m = cells[c].m;
                    row.seed = cells[c].seed;
                    row.method = method;
                    row.backend = method == Method::kAdmm ? backend_name(o.admm.backend.kind) : "";
                    row.total = r.solution.cost.total;
                    row.iterations = r.iterations;
                    row.converged = r.converged;
                    row.placement = r.solution.placement.to_string();
                    row.time_s = r.solve_time_s;
                    out[c].push_back(std::move(row));
                }
                if (want_gap) {
                    if (!exact_total) exact_total = enumerate_solve(inst, spec.options.exact).cost.total;
                    for (auto& row : out[c]) {
                        if (row.method == Method::kAdmm) row.gap = relative_gap(row.total, *exact_total);
                    }
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };

    const unsigned threads = std::min<unsigned>(sweep_threads(spec.threads), static_cast<unsigned>(cells.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    std::vector<SweepRow> rows;
    for (auto& cell_rows : out) {
        for (auto& row : cell_rows) rows.push_back(std::move(row));
    }
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.m != b.m) return a.m < b.m;
        if (a.seed != b.seed) return a.seed < b.seed;
        return static_cast<int>(a.method) < static_cast<int>(b.method);
    });
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out.precision(17);
    out << "m,seed,method,backend,total,gap,iterations,converged,placement,time_s\n";
    for (const auto& r : rows) {
        out << r.m << ',' << r.seed << ',' << method_name(r.method) << ',' << r.backend << ',' << r.total << ',';
        if (r.gap) out << *r.gap;
        out << ',' << r.iterations << ',' << (r.converged ? 1 : 0) << ',' << r.placement << ',' << r.time_s << '\n';
    }
    return out.str();
}

}  // namespace qedge
