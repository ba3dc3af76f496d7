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

#include "qedge/backends.hpp"

#include <chrono>
#include <bit>
#include <cmath>

#include "qedge/backend_select.hpp"
#include "qedge/rng.hpp"

namespace qedge {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// True when `a` precedes `b` lexicographically with bit 0 compared first.
bool lex_less(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t diff = a ^ b;
    if (diff == 0) return false;
    const std::uint64_t lowest = diff & (~diff + 1);
    return (a & lowest) == 0;
}

}  // namespace

QuboSolverResult solve_exhaustive(const Qubo& qubo) {
    const auto start = Clock::now();
    const std::size_t n = qubo.num_vars();
    if (n > kExhaustiveMaxVars) {
        throw_capacity("solve_exhaustive: " + std::to_string(n) + " variables exceeds the limit of " +
                       std::to_string(kExhaustiveMaxVars));
    }
    const std::vector<double> s = qubo.dense_symmetric();
    const std::uint64_t count = std::uint64_t{1} << n;

    // Walk the Gray code with O(n) energy deltas; candidates near the
    // incumbent are re-evaluated exactly so drift cannot pick the wrong one.
    std::uint64_t state = 0;
    double energy = qubo.offset();
    std::uint64_t best_state = 0;
    double best_energy = energy;
    for (std::uint64_t k = 1; k < count; ++k) {
        const auto flip = static_cast<std::size_t>(std::countr_zero(k));
        double field = s[flip * n + flip];
        for (std::size_t j = 0; j < n; ++j) {
            if (j != flip && ((state >> j) & 1u)) field += 2.0 * s[flip * n + j];
        }
        const bool was_set = (state >> flip) & 1u;
        energy += was_set ? -field : field;
        state ^= std::uint64_t{1} << flip;
        if ((k & 1023u) == 0) energy = qubo_eval_index(qubo, state);

        const double slack = 1e-9 * (1.0 + std::abs(best_energy));
        if (energy <= best_energy + slack) {
            const double exact = qubo_eval_index(qubo, state);
            if (exact < best_energy || (exact == best_energy && lex_less(state, best_state))) {
                best_energy = exact;
                best_state = state;
            }
        }
    }

    QuboSolverResult r;
    r.best_bitstring = bits_from_index(best_state, n);
    r.best_energy = qubo_eval(qubo, r.best_bitstring);
    r.samples_evaluated = count;
    r.backend_name = "exhaustive";
    r.wall_time_s = seconds_since(start);
    return r;
}

QuboSolverResult solve_anneal(const Qubo& qubo, const AnnealConfig& cfg, std::uint64_t seed) {
    const auto start = Clock::now();
    const std::size_t n = qubo.num_vars();
    if (n < 1) throw_parameter("solve_anneal: QUBO has no variables");

    double t_start = cfg.t_start.value_or(qubo.max_abs_coeff());
    if (!cfg.t_start && t_start == 0.0) t_start = 1.0;
    const double t_end = cfg.t_end.value_or(1e-3 * t_start);
    const std::size_t sweeps = cfg.sweeps.value_or(200 * n);
    if (!(t_end > 0.0) || !(t_start > t_end)) {
        throw_parameter("solve_anneal: schedule needs t_start > t_end > 0");
    }
    if (sweeps < 1) throw_parameter("solve_anneal: sweeps must be >= 1");

    const std::vector<double> s = qubo.dense_symmetric();
    Rng rng(seed, Rng::Stream::kSolver);
    Bits bits(n);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next_u64() >> 63);
    double energy = qubo_eval(qubo, bits);
    Bits best = bits;
    double best_energy = energy;

    QuboSolverResult r;
    r.trace.reserve(sweeps);
    const double ratio = sweeps > 1 ? std::pow(t_end / t_start, 1.0 / static_cast<double>(sweeps - 1)) : 1.0;
    double temperature = t_start;
    for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
        for (std::size_t i = 0; i < n; ++i) {
            double field = s[i * n + i];
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i && bits[j]) field += 2.0 * s[i * n + j];
            }
            const double delta = bits[i] ? -field : field;
            if (delta <= 0.0 || rng.uniform01() < std::exp(-delta / temperature)) {
                bits[i] ^= 1u;
                energy += delta;
                if (energy < best_energy) {
                    best_energy = energy;
                    best = bits;
                }
            }
        }
        r.samples_evaluated += n;
        r.trace.push_back(best_energy);
        temperature *= ratio;
    }

    r.best_bitstring = std::move(best);
    r.best_energy = qubo_eval(qubo, r.best_bitstring);
    r.backend_name = "anneal";
    r.wall_time_s = seconds_since(start);
    return r;
}

const char* backend_name(BackendKind kind) {
    switch (kind) {
        case BackendKind::kExhaustive: return "exhaustive";
        case BackendKind::kAnneal: return "anneal";
        case BackendKind::kQaoa: return "qaoa";
    }
    return "unknown";
}

BackendKind parse_backend(const std::string& name) {
    if (name == "exhaustive") return BackendKind::kExhaustive;
    if (name == "anneal") return BackendKind::kAnneal;
    if (name == "qaoa") return BackendKind::kQaoa;
    throw_parameter("unknown QUBO backend \"" + name + "\" (expected exhaustive, anneal or qaoa)");
}

QuboSolverResult solve_qubo(const Qubo& qubo, const BackendConfig& cfg, std::uint64_t seed) {
    switch (cfg.kind) {
        case BackendKind::kExhaustive: return solve_exhaustive(qubo);
        case BackendKind::kAnneal: return solve_anneal(qubo, cfg.anneal, seed);
        case BackendKind::kQaoa: return solve_qaoa(qubo, cfg.qaoa, seed);
    }
    throw_parameter("solve_qubo: invalid backend");
}

}  // namespace qedge
