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

// qedge command-line harness. Talks to the library exclusively through the C
// interface in qedge/qedge.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qedge/qedge.h"

namespace {

using json = nlohmann::json;

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitCapacity = 2, kExitSolver = 3 };

constexpr const char* kExitCodesHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  1  usage error (bad flags, unreadable or invalid input)\n"
    "  2  capacity error (instance too large for the chosen method)\n"
    "  3  solver failure\n";

struct Failure {
    qedge_status status;
    std::string message;
};

void check(qedge_status status) {
    if (status != QEDGE_OK) throw Failure{status, qedge_last_error()};
}

int exit_code_for(qedge_status status) {
    switch (status) {
        case QEDGE_OK: return kExitOk;
        case QEDGE_ERR_CAPACITY: return kExitCapacity;
        case QEDGE_ERR_SOLVER:
        case QEDGE_ERR_INTERNAL: return kExitSolver;
        default: return kExitUsage;
    }
}

struct InstanceDeleter {
    void operator()(qedge_instance* p) const { qedge_instance_free(p); }
};
struct ReportDeleter {
    void operator()(qedge_report* p) const { qedge_report_free(p); }
};
struct StringDeleter {
    void operator()(char* p) const { qedge_string_free(p); }
};
using InstancePtr = std::unique_ptr<qedge_instance, InstanceDeleter>;
using ReportPtr = std::unique_ptr<qedge_report, ReportDeleter>;
using CString = std::unique_ptr<char, StringDeleter>;

std::string take_string(char* raw) { return CString(raw).get(); }

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw Failure{QEDGE_ERR_IO, "cannot write " + path};
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{QEDGE_ERR_IO, "cannot read " + path};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Flags shared by generate and sweep.
struct GeneratorFlags {
    std::size_t ens = 3;
    std::optional<int> node_count;
    std::optional<double> budget;
    bool embed_topology = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--node-count", node_count, "Topology size (default max(50, areas + ens))");
        cmd->add_option("--budget", budget, "Placement budget B (default 20)");
    }

    json to_json(std::size_t areas, std::uint64_t seed) const {
        json g = {{"areas", areas}, {"ens", ens}, {"seed", seed}, {"embed_topology", embed_topology}};
        if (node_count) g["node_count"] = *node_count;
        if (budget) g["budget"] = *budget;
        return g;
    }
};

// Flags that shape SolveOptions; only explicitly given flags override the
// base config so that a replayed config stays intact.
struct SolveFlags {
    std::optional<std::string> method;
    std::optional<std::string> backend;
    std::optional<std::string> baseline;
    std::optional<std::uint64_t> seed;
    std::optional<double> rho_admm;
    std::optional<std::size_t> qaoa_depth;
    std::optional<std::size_t> shots;
    std::optional<std::size_t> slack_bits;
    std::optional<std::size_t> max_iters;
    std::string config_path;

    void attach(CLI::App* cmd, bool with_method) {
        if (with_method) {
            cmd->add_option("--method", method, "exact or admm (default exact)")
                ->check(CLI::IsMember({"exact", "admm"}));
            cmd->add_option("--baseline", baseline, "Also run the exact solver and report the gap: exact or none")
                ->check(CLI::IsMember({"exact", "none"}));
            cmd->add_option("--seed", seed, "Solver seed (default 0)");
            cmd->add_option("--config", config_path, "Solve options JSON, e.g. the \"config\" object of a report");
        }
        cmd->add_option("--backend", backend, "QUBO backend for admm: exhaustive, anneal or qaoa")
            ->check(CLI::IsMember({"exhaustive", "anneal", "qaoa"}));
        cmd->add_option("--rho-admm", rho_admm, "ADMM penalty weight (default mean(rho)/max(C))")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--qaoa-depth", qaoa_depth, "QAOA layers p (default 3)")->check(CLI::Range(1, 64));
        cmd->add_option("--shots", shots, "QAOA measurement shots (default 1024)")->check(CLI::PositiveNumber);
        cmd->add_option("--slack-bits", slack_bits, "Budget slack bits K (default 4)")->check(CLI::Range(0, 16));
        cmd->add_option("--max-iters", max_iters, "ADMM iteration cap (default 100)")->check(CLI::PositiveNumber);
    }

    json to_json() const {
        json o = config_path.empty() ? json::object() : json::parse(read_text(config_path));
        if (o.contains("config")) o = o["config"];
        if (method) o["method"] = *method;
        if (seed) o["seed"] = *seed;
        if (baseline) o["baseline"] = *baseline == "exact" ? json("exact") : json(nullptr);
        json& admm = o["admm"];
        if (!admm.is_object()) admm = json::object();
        if (backend) admm["backend"] = *backend;
        if (rho_admm) admm["rho_admm"] = *rho_admm;
        if (max_iters) admm["max_iters"] = *max_iters;
        if (qaoa_depth) admm["qaoa"]["depth"] = *qaoa_depth;
        if (shots) admm["qaoa"]["shots"] = *shots;
        if (slack_bits) admm["budget"]["slack_bits"] = *slack_bits;
        return o;
    }
};

int cmd_generate(std::size_t areas, std::uint64_t seed, const GeneratorFlags& gen, const std::string& out_path) {
    qedge_instance* raw = nullptr;
    check(qedge_instance_generate(gen.to_json(areas, seed).dump().c_str(), &raw));
    InstancePtr inst(raw);

    std::size_t m = 0;
    std::size_t n = 0;
    double demand = 0.0;
    double capacity = 0.0;
    double budget = 0.0;
    check(qedge_instance_dims(inst.get(), &m, &n));
    check(qedge_instance_summary(inst.get(), &demand, &capacity, &budget));

    char* text = nullptr;
    check(qedge_instance_to_json(inst.get(), &text));
    write_text(out_path, take_string(text));

    std::FILE* summary = out_path.empty() || out_path == "-" ? stderr : stdout;
    std::fprintf(summary, "M=%zu N=%zu total_demand=%.6g total_capacity=%.6g budget=%.6g\n", m, n, demand, capacity,
                 budget);
    return kExitOk;
}

int cmd_solve(const std::string& instance_path, const SolveFlags& flags, const std::string& out_path,
              const std::string& trace_path) {
    qedge_instance* raw = nullptr;
    check(qedge_instance_load(instance_path.c_str(), &raw));
    InstancePtr inst(raw);

    qedge_report* raw_report = nullptr;
    check(qedge_solve(inst.get(), flags.to_json().dump().c_str(), instance_path.c_str(), &raw_report));
    ReportPtr report(raw_report);

    char* text = nullptr;
    check(qedge_report_json(report.get(), &text));
    write_text(out_path, take_string(text));

    if (!trace_path.empty()) {
        char* csv = nullptr;
        check(qedge_report_trace_csv(report.get(), &csv));
        write_text(trace_path, take_string(csv));
    }
    return kExitOk;
}

int cmd_sweep(const std::vector<std::size_t>& areas, const std::vector<std::uint64_t>& seeds,
              const std::vector<std::string>& methods, const GeneratorFlags& gen, const SolveFlags& flags, bool flat,
              const std::string& out_path) {
    json generator = gen.to_json(0, 0);
    generator.erase("areas");
    generator.erase("seed");
    const json spec = {{"areas", areas},         {"seeds", seeds},      {"methods", methods},
                       {"generator", generator}, {"nested", !flat},     {"options", flags.to_json()}};
    char* csv = nullptr;
    check(qedge_sweep(spec.dump().c_str(), &csv));
    write_text(out_path, take_string(csv));
    return kExitOk;
}

int cmd_qubo(const std::string& path, const SolveFlags& flags, std::uint64_t seed, const std::string& out_path) {
    json backend = flags.to_json()["admm"];
    backend.erase("rho_admm");
    backend.erase("max_iters");
    backend.erase("budget");
    char* result = nullptr;
    check(qedge_qubo_solve_text(read_text(path).c_str(), backend.dump().c_str(), seed, &result));
    write_text(out_path, take_string(result));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qedge: budgeted edge-node placement with a hybrid quantum-classical ADMM solver"};
    app.footer(kExitCodesHelp);
    app.require_subcommand(1);
    app.set_version_flag("--version", qedge_version());

    std::size_t areas = 0;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string trace_path;
    std::string instance_path;
    GeneratorFlags gen;

    auto* generate = app.add_subcommand("generate", "Generate a random instance (JSON)");
    generate->add_option("--areas", areas, "Number of demand areas M")->required()->check(CLI::PositiveNumber);
    generate->add_option("--ens", gen.ens, "Number of candidate edge nodes N (default 3)")
        ->check(CLI::PositiveNumber);
    generate->add_option("--seed", seed, "Generator seed (default 0)");
    generate->add_flag("--embed-topology", gen.embed_topology, "Store the generated graph in the instance");
    generate->add_option("-o,--out", out_path, "Output file (default stdout)");
    gen.attach(generate);
    generate->footer(kExitCodesHelp);

    SolveFlags solve_flags;
    auto* solve = app.add_subcommand("solve", "Solve an instance and write a run report (JSON)");
    solve->add_option("-i,--instance", instance_path, "Instance JSON file")->required();
    solve->add_option("-o,--out", out_path, "Report file (default stdout)");
    solve->add_option("--trace", trace_path, "ADMM trace CSV file");
    solve_flags.attach(solve, true);
    solve->footer(kExitCodesHelp);

    std::vector<std::size_t> sweep_areas;
    std::vector<std::uint64_t> sweep_seeds;
    std::vector<std::string> sweep_methods{"exact"};
    bool flat = false;
    SolveFlags sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "Solve a grid of generated instances and write CSV rows");
    const CLI::Validator non_empty(
        [](std::string& item) { return item.empty() ? std::string("empty list entry") : std::string(); }, "NONEMPTY");
    sweep->add_option("--areas", sweep_areas, "Area counts, e.g. 5,10,20")->required()->delimiter(',')->check(non_empty);
    sweep->add_option("--seeds", sweep_seeds, "Instance seeds, e.g. 1,2,3")->required()->delimiter(',')->check(non_empty);
    sweep->add_option("--methods", sweep_methods, "Methods, e.g. exact,admm (default exact)")
        ->delimiter(',')
        ->check(CLI::IsMember({"exact", "admm"}));
    sweep->add_option("--ens", gen.ens, "Number of candidate edge nodes N (default 3)")->check(CLI::PositiveNumber);
    sweep->add_flag("--independent", flat, "Generate each area count separately instead of nesting");
    sweep->add_option("--seed", sweep_flags.seed, "Solver seed (default 0)");
    sweep->add_option("-o,--out", out_path, "CSV file (default stdout)");
    gen.attach(sweep);
    sweep_flags.attach(sweep, false);
    sweep->footer(kExitCodesHelp);

    std::string qubo_path;
    SolveFlags qubo_flags;
    auto* qubo = app.add_subcommand("qubo", "Minimize a QUBO given as \"i j value\" lines");
    qubo->add_option("-i,--input", qubo_path, "QUBO text file")->required();
    qubo->add_option("--seed", seed, "Backend seed (default 0)");
    qubo->add_option("-o,--out", out_path, "Result file (default stdout)");
    qubo_flags.attach(qubo, false);
    qubo->footer(kExitCodesHelp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*generate) return cmd_generate(areas, seed, gen, out_path);
        if (*solve) return cmd_solve(instance_path, solve_flags, out_path, trace_path);
        if (*sweep) {
            if (sweep_seeds.empty() || sweep_areas.empty()) throw Failure{QEDGE_ERR_PARAMETER, "empty --areas or --seeds list"};
            return cmd_sweep(sweep_areas, sweep_seeds, sweep_methods, gen, sweep_flags, flat, out_path);
        }
        if (*qubo) return cmd_qubo(qubo_path, qubo_flags, seed, out_path);
    } catch (const Failure& f) {
        std::cerr << "qedge: " << qedge_status_name(f.status) << ": " << f.message << '\n';
        return exit_code_for(f.status);
    } catch (const json::exception& e) {
        std::cerr << "qedge: invalid JSON: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
