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

#include "qedge/qedge.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <numeric>
#include <string>

#include <json.hpp>

#include "qedge/backend_select.hpp"
#include "qedge/instance.hpp"
#include "qedge/report.hpp"

struct qedge_instance {
    qedge::ProblemInstance value;
};

struct qedge_report {
    qedge::RunReport value;
};

namespace {

using json = nlohmann::json;

thread_local std::string last_error;

qedge_status status_for(qedge::ErrorKind kind) {
    switch (kind) {
        case qedge::ErrorKind::kParameter: return QEDGE_ERR_PARAMETER;
        case qedge::ErrorKind::kParse: return QEDGE_ERR_PARSE;
        case qedge::ErrorKind::kValidation: return QEDGE_ERR_VALIDATION;
        case qedge::ErrorKind::kCapacity: return QEDGE_ERR_CAPACITY;
        case qedge::ErrorKind::kSolver: return QEDGE_ERR_SOLVER;
        case qedge::ErrorKind::kIo: return QEDGE_ERR_IO;
    }
    return QEDGE_ERR_INTERNAL;
}

template <class F>
qedge_status guarded(F&& body) {
    last_error.clear();
    try {
        body();
        return QEDGE_OK;
    } catch (const qedge::Error& e) {
        last_error = e.what();
        return status_for(e.kind());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return QEDGE_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return QEDGE_ERR_INTERNAL;
    }
}

qedge_status null_status(const char* name = nullptr) {
    last_error = name == nullptr ? "null argument" : std::string("null argument: ") + name;
    return QEDGE_ERR_NULL;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

json parse_object(const char* text, const char* what) {
    if (text == nullptr || *text == '\0') return json::object();
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw qedge::Error(qedge::ErrorKind::kParse, std::string(what) + ": " + e.what());
    }
    if (!doc.is_object()) throw qedge::Error(qedge::ErrorKind::kParameter, std::string(what) + " must be a JSON object");
    return doc;
}

template <class T>
void take(json& obj, const char* key, T& out, const char* what) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    try {
        if constexpr (requires { out.reset(); }) {
            if (it->is_null()) {
                out.reset();
            } else {
                out = it->get<typename T::value_type>();
            }
        } else {
            out = it->get<T>();
        }
    } catch (const json::exception& e) {
        throw qedge::Error(qedge::ErrorKind::kParameter, std::string(what) + " key \"" + key + "\": " + e.what());
    }
    obj.erase(it);
}

void reject_leftovers(const json& obj, const char* what) {
    if (!obj.empty()) {
        throw qedge::Error(qedge::ErrorKind::kParameter,
                           std::string("unknown key \"") + obj.begin().key() + "\" in " + what);
    }
}

qedge::GenConfig gen_config_from(json obj) {
    const char* what = "generator config";
    qedge::GenConfig g;
    take(obj, "areas", g.areas, what);
    take(obj, "ens", g.ens, what);
    take(obj, "seed", g.seed, what);
    take(obj, "node_count", g.node_count, what);
    take(obj, "attach_degree", g.attach_degree, what);
    take(obj, "demand_lo", g.demand_lo, what);
    take(obj, "demand_hi", g.demand_hi, what);
    take(obj, "cost_lo", g.cost_lo, what);
    take(obj, "cost_hi", g.cost_hi, what);
    take(obj, "capacity_ladder", g.capacity_ladder, what);
    take(obj, "budget", g.budget, what);
    take(obj, "delay_penalty", g.delay_penalty, what);
    take(obj, "unmet_penalty", g.unmet_penalty, what);
    take(obj, "embed_topology", g.embed_topology, what);
    reject_leftovers(obj, what);
    return g;
}

}  // namespace

extern "C" {

const char* qedge_version(void) { return "0.1.0"; }

const char* qedge_status_name(qedge_status status) {
    switch (status) {
        case QEDGE_OK: return "ok";
        case QEDGE_ERR_PARAMETER: return "parameter error";
        case QEDGE_ERR_PARSE: return "parse error";
        case QEDGE_ERR_VALIDATION: return "validation error";
        case QEDGE_ERR_CAPACITY: return "capacity error";
        case QEDGE_ERR_SOLVER: return "solver error";
        case QEDGE_ERR_IO: return "i/o error";
        case QEDGE_ERR_NULL: return "null argument";
        case QEDGE_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* qedge_last_error(void) { return last_error.c_str(); }

void qedge_string_free(char* s) { std::free(s); }

qedge_status qedge_instance_generate(const char* gen_config_json, qedge_instance** out) {
    if (out == nullptr) return null_status("out");
    return guarded([&] {
        auto cfg = gen_config_from(parse_object(gen_config_json, "generator config"));
        *out = new qedge_instance{qedge::generate_instance(cfg)};
    });
}

qedge_status qedge_instance_from_json(const char* text, qedge_instance** out) {
    if (out == nullptr || text == nullptr) return null_status();
    return guarded([&] { *out = new qedge_instance{qedge::instance_from_json(text)}; });
}

qedge_status qedge_instance_load(const char* path, qedge_instance** out) {
    if (out == nullptr || path == nullptr) return null_status();
    return guarded([&] { *out = new qedge_instance{qedge::load_instance(path)}; });
}

qedge_status qedge_instance_save(const qedge_instance* instance, const char* path) {
    if (instance == nullptr || path == nullptr) return null_status();
    return guarded([&] { qedge::save_instance(instance->value, path); });
}

qedge_status qedge_instance_to_json(const qedge_instance* instance, char** out) {
    if (instance == nullptr || out == nullptr) return null_status();
    return guarded([&] { *out = dup_string(qedge::instance_to_json(instance->value)); });
}

qedge_status qedge_instance_restrict(const qedge_instance* instance, size_t m_keep, qedge_instance** out) {
    if (instance == nullptr || out == nullptr) return null_status();
    return guarded([&] { *out = new qedge_instance{qedge::restrict_areas(instance->value, m_keep)}; });
}

qedge_status qedge_instance_dims(const qedge_instance* instance, size_t* m, size_t* n) {
    if (instance == nullptr) return null_status("instance");
    if (m != nullptr) *m = instance->value.m;
    if (n != nullptr) *n = instance->value.n;
    last_error.clear();
    return QEDGE_OK;
}

qedge_status qedge_instance_summary(const qedge_instance* instance, double* total_demand, double* total_capacity,
                                    double* budget) {
    if (instance == nullptr) return null_status("instance");
    const auto& v = instance->value;
    if (total_demand != nullptr) *total_demand = std::accumulate(v.demand.begin(), v.demand.end(), 0.0);
    if (total_capacity != nullptr) *total_capacity = std::accumulate(v.capacity.begin(), v.capacity.end(), 0.0);
    if (budget != nullptr) *budget = v.budget;
    last_error.clear();
    return QEDGE_OK;
}

void qedge_instance_free(qedge_instance* instance) { delete instance; }

qedge_status qedge_solve(const qedge_instance* instance, const char* options_json, const char* instance_ref,
                         qedge_report** out) {
    if (instance == nullptr || out == nullptr) return null_status();
    return guarded([&] {
        const auto options = qedge::solve_options_from_json(options_json == nullptr ? "" : options_json);
        *out = new qedge_report{qedge::run_solve(instance->value, options, instance_ref == nullptr ? "" : instance_ref)};
    });
}

qedge_status qedge_report_json(const qedge_report* report, char** out) {
    if (report == nullptr || out == nullptr) return null_status();
    return guarded([&] { *out = dup_string(qedge::report_to_json(report->value)); });
}

qedge_status qedge_report_trace_csv(const qedge_report* report, char** out) {
    if (report == nullptr || out == nullptr) return null_status();
    return guarded([&] { *out = dup_string(report->value.trace_csv); });
}

qedge_status qedge_report_total(const qedge_report* report, double* total) {
    if (report == nullptr || total == nullptr) return null_status();
    *total = report->value.solution.cost.total;
    last_error.clear();
    return QEDGE_OK;
}

qedge_status qedge_report_placement(const qedge_report* report, char** out) {
    if (report == nullptr || out == nullptr) return null_status();
    return guarded([&] { *out = dup_string(report->value.solution.placement.to_string()); });
}

void qedge_report_free(qedge_report* report) { delete report; }

qedge_status qedge_sweep(const char* sweep_json, char** csv_out) {
    if (sweep_json == nullptr || csv_out == nullptr) return null_status();
    return guarded([&] {
        const char* what = "sweep spec";
        json obj = parse_object(sweep_json, what);
        qedge::SweepSpec spec;
        std::vector<std::string> methods;
        json generator = json::object();
        json options = json::object();
        take(obj, "areas", spec.areas, what);
        take(obj, "seeds", spec.seeds, what);
        take(obj, "methods", methods, what);
        take(obj, "generator", generator, what);
        take(obj, "options", options, what);
        take(obj, "nested", spec.nested, what);
        take(obj, "threads", spec.threads, what);
        reject_leftovers(obj, what);
        for (const auto& m : methods) spec.methods.push_back(qedge::parse_method(m));
        spec.base = gen_config_from(generator);
        spec.options = qedge::solve_options_from_json(options.dump());
        *csv_out = dup_string(qedge::sweep_to_csv(qedge::run_sweep(spec)));
    });
}

qedge_status qedge_qubo_solve_text(const char* qubo_text, const char* backend_json, uint64_t seed,
                                   char** result_json) {
    if (qubo_text == nullptr || result_json == nullptr) return null_status();
    return guarded([&] {
        const json wrapped = {{"admm", parse_object(backend_json, "backend config")}};
        const auto options = qedge::solve_options_from_json(wrapped.dump());
        const qedge::Qubo qubo = qedge::qubo_from_text(qubo_text);
        const auto result = qedge::solve_qubo(qubo, options.admm.backend, seed);
        std::string bits;
        for (auto b : result.best_bitstring) bits.push_back(b ? '1' : '0');
        const json doc = {{"backend", result.backend_name},
                          {"bitstring", bits},
                          {"energy", result.best_energy},
                          {"samples", result.samples_evaluated}};
        *result_json = dup_string(doc.dump(2) + "\n");
    });
}

}  // extern "C"
