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

/* C interface to the qedge library.
 *
 * Every call returns a qedge_status. On failure the message is available from
 * qedge_last_error() until the next call on the same thread. Strings returned
 * through char** out-parameters are owned by the caller and must be released
 * with qedge_string_free. JSON arguments may be NULL or "" to take defaults. */
#ifndef QEDGE_QEDGE_H
#define QEDGE_QEDGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(QEDGE_BUILDING_LIBRARY)
#define QEDGE_API __attribute__((visibility("default")))
#else
#define QEDGE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qedge_status {
    QEDGE_OK = 0,
    QEDGE_ERR_PARAMETER = 1,
    QEDGE_ERR_PARSE = 2,
    QEDGE_ERR_VALIDATION = 3,
    QEDGE_ERR_CAPACITY = 4,
    QEDGE_ERR_SOLVER = 5,
    QEDGE_ERR_IO = 6,
    QEDGE_ERR_NULL = 7,
    QEDGE_ERR_INTERNAL = 8
} qedge_status;

typedef struct qedge_instance qedge_instance;
typedef struct qedge_report qedge_report;

QEDGE_API const char* qedge_version(void);
QEDGE_API const char* qedge_status_name(qedge_status status);
QEDGE_API const char* qedge_last_error(void);
QEDGE_API void qedge_string_free(char* s);

/* Generator config keys: areas, ens, seed (required for a useful instance),
 * node_count, attach_degree, demand_lo, demand_hi, cost_lo, cost_hi,
 * capacity_ladder, budget, delay_penalty, unmet_penalty, embed_topology. */
QEDGE_API qedge_status qedge_instance_generate(const char* gen_config_json, qedge_instance** out);
QEDGE_API qedge_status qedge_instance_from_json(const char* text, qedge_instance** out);
QEDGE_API qedge_status qedge_instance_load(const char* path, qedge_instance** out);
QEDGE_API qedge_status qedge_instance_save(const qedge_instance* instance, const char* path);
QEDGE_API qedge_status qedge_instance_to_json(const qedge_instance* instance, char** out);
QEDGE_API qedge_status qedge_instance_restrict(const qedge_instance* instance, size_t m_keep, qedge_instance** out);
QEDGE_API qedge_status qedge_instance_dims(const qedge_instance* instance, size_t* m, size_t* n);
QEDGE_API qedge_status qedge_instance_summary(const qedge_instance* instance, double* total_demand,
                                              double* total_capacity, double* budget);
QEDGE_API void qedge_instance_free(qedge_instance* instance);

/* Options JSON mirrors the "config" object of a report, so a report's config
 * can be fed back verbatim. instance_ref is echoed into the report. */
QEDGE_API qedge_status qedge_solve(const qedge_instance* instance, const char* options_json,
                                   const char* instance_ref, qedge_report** out);
QEDGE_API qedge_status qedge_report_json(const qedge_report* report, char** out);
QEDGE_API qedge_status qedge_report_trace_csv(const qedge_report* report, char** out);
QEDGE_API qedge_status qedge_report_total(const qedge_report* report, double* total);
QEDGE_API qedge_status qedge_report_placement(const qedge_report* report, char** out);
QEDGE_API void qedge_report_free(qedge_report* report);

/* Sweep spec keys: areas (list), seeds (list), methods (list of "exact" /
 * "admm"), generator (generator config), options (solve options), nested,
 * threads. Produces the sweep CSV. */
QEDGE_API qedge_status qedge_sweep(const char* sweep_json, char** csv_out);

/* Solves a QUBO in the "i j value" text format. backend_json holds the
 * "backend", "anneal" and "qaoa" keys of the admm options block. The result is
 * a JSON object with bitstring, energy, backend and samples. */
QEDGE_API qedge_status qedge_qubo_solve_text(const char* qubo_text, const char* backend_json, uint64_t seed,
                                             char** result_json);

#ifdef __cplusplus
}
#endif

#endif
