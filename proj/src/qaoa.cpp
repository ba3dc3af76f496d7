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

#include "qedge/qaoa.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "nelder_mead.hpp"
#include "qedge/rng.hpp"

namespace qedge {

namespace {

void require_size(const Statevector& state, const CostSpectrum& spectrum, const char* who) {
    if (state.size() != spectrum.size()) {
        throw_parameter(std::string(who) + ": state has " + std::to_string(state.size()) +
                        " amplitudes, spectrum has " + std::to_string(spectrum.size()) + " entries");
    }
}

std::size_t qubit_count(std::size_t dim) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    return n;
}

}  // namespace

CostSpectrum build_spectrum(const Qubo& qubo) {
    const std::size_t n = qubo.num_vars();
    if (n > kQaoaMaxQubits) {
        throw_capacity("build_spectrum: " + std::to_string(n) + " qubits exceeds the limit of " +
                       std::to_string(kQaoaMaxQubits));
    }
    CostSpectrum e(std::size_t{1} << n);
    for (std::size_t j = 0; j < e.size(); ++j) e[j] = qubo_eval_index(qubo, j);
    return e;
}

Statevector init_uniform_state(std::size_t num_qubits) {
    if (num_qubits < 1 || num_qubits > kQaoaMaxQubits) {
        throw_capacity("init_uniform_state: qubit count " + std::to_string(num_qubits) + " outside [1, " +
                       std::to_string(kQaoaMaxQubits) + "]");
    }
    const std::size_t dim = std::size_t{1} << num_qubits;
    return Statevector(dim, Amplitude(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
}

void apply_cost_phase(Statevector& state, const CostSpectrum& spectrum, double gamma) {
    require_size(state, spectrum, "apply_cost_phase");
    if (gamma == 0.0) return;
    for (std::size_t j = 0; j < state.size(); ++j) {
        const double phase = -gamma * spectrum[j];
        state[j] *= Amplitude(std::cos(phase), std::sin(phase));
    }
}

void apply_mixer(Statevector& state, double alpha) {
    const double c = std::cos(alpha);
    const double s = std::sin(alpha);
    const Amplitude minus_i_s(0.0, -s);
    const std::size_t dim = state.size();
    for (std::size_t stride = 1; stride < dim; stride <<= 1) {
        for (std::size_t base = 0; base < dim; base += 2 * stride) {
            for (std::size_t j = base; j < base + stride; ++j) {
                const Amplitude a = state[j];
                const Amplitude b = state[j + stride];
                state[j] = c * a + minus_i_s * b;
                state[j + stride] = c * b + minus_i_s * a;
            }
        }
    }
}

double evaluate_expectation(const Statevector& state, const CostSpectrum& spectrum) {
    require_size(state, spectrum, "evaluate_expectation");
    // Neumaier summation, fixed index order.
    double sum = 0.0;
    double carry = 0.0;
    for (std::size_t j = 0; j < state.size(); ++j) {
        const double term = std::norm(state[j]) * spectrum[j];
        const double t = sum + term;
        carry += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    return sum + carry;
}

Statevector prepare_state(std::size_t num_qubits, const CostSpectrum& spectrum, const QaoaParams& params) {
    if (params.cost_angles.size() != params.mixer_angles.size()) {
        throw_parameter("prepare_state: cost and mixer angle counts differ");
    }
    Statevector state = init_uniform_state(num_qubits);
    for (std::size_t layer = 0; layer < params.depth(); ++layer) {
        apply_cost_phase(state, spectrum, params.cost_angles[layer]);
        apply_mixer(state, params.mixer_angles[layer]);
    }
    return state;
}

QaoaOptimum optimize_parameters(const Qubo& qubo, std::size_t depth, const QaoaOptimizerConfig& cfg,
                                std::uint64_t seed) {
    if (depth < 1) throw_parameter("optimize_parameters: depth must be >= 1");
    const std::size_t n = qubo.num_vars();
    const CostSpectrum spectrum = build_spectrum(qubo);
    const auto [lo_it, hi_it] = std::minmax_element(spectrum.begin(), spectrum.end());
    const double lo = *lo_it;
    const double range = *hi_it - lo;

    // Search runs against (E - min) / range so angle scales do not depend on
    // the magnitude of the coefficients. Shifting E only adds a global phase.
    const double scale = range > 0.0 ? range : 1.0;
    CostSpectrum unit(spectrum.size());
    for (std::size_t j = 0; j < spectrum.size(); ++j) unit[j] = (spectrum[j] - lo) / scale;

    auto split = [depth](const std::vector<double>& v) {
        QaoaParams p;
        p.cost_angles.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(depth));
        p.mixer_angles.assign(v.begin() + static_cast<std::ptrdiff_t>(depth), v.end());
        return p;
    };
    auto objective = [&](const std::vector<double>& v) {
        return evaluate_expectation(prepare_state(n, unit, split(v)), unit);
    };

    std::vector<double> best_x(2 * depth, 0.0);
    double best_val = objective(best_x);
    std::size_t evaluations = 1;

    if (range > 0.0) {
        for (std::size_t r = 0; r < cfg.restarts; ++r) {
            Rng rng(seed, Rng::Stream::kSolver, static_cast<std::uint32_t>(r));
            std::vector<double> start(2 * depth);
            for (auto& a : start) a = rng.uniform(0.0, std::numbers::pi);
            const auto res = detail::nelder_mead(objective, std::move(start), cfg.initial_step, cfg.xtol,
                                                 cfg.evals_per_layer * depth);
            evaluations += res.evaluations;
            if (res.value < best_val) {
                best_val = res.value;
                best_x = res.x;
            }
        }
    }

    QaoaOptimum out;
    out.params = split(best_x);
    for (auto& g : out.params.cost_angles) g /= scale;
    out.expectation = evaluate_expectation(prepare_state(n, spectrum, out.params), spectrum);
    out.evaluations = evaluations;
    return out;
}

std::vector<std::uint64_t> sample_bitstrings(const Statevector& state, std::size_t shots, std::uint64_t seed) {
    if (shots < 1) throw_parameter("sample_bitstrings: shots must be >= 1");
    std::vector<double> cdf(state.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < state.size(); ++j) {
        acc += std::norm(state[j]);
        cdf[j] = acc;
    }
    Rng rng(seed, Rng::Stream::kSolver, 0xffffu);
    std::vector<std::uint64_t> out(shots);
    for (auto& s : out) {
        const double u = rng.uniform01() * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        // u can round up to acc itself; that draw belongs to the last state.
        if (it == cdf.end()) it = std::prev(cdf.end());
        s = static_cast<std::uint64_t>(it - cdf.begin());
    }
    return out;
}

QuboSolverResult solve_qaoa(const Qubo& qubo, const QaoaConfig& cfg, std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = qubo.num_vars();
    if (n > kQaoaMaxQubits) {
        throw_capacity("solve_qaoa: " + std::to_string(n) + " qubits exceeds the statevector limit of " +
                       std::to_string(kQaoaMaxQubits));
    }
    QuboSolverResult r;
    r.backend_name = "qaoa";
    if (n == 0) {
        r.best_energy = qubo.offset();
        return r;
    }

    const QaoaOptimum opt = optimize_parameters(qubo, cfg.depth, cfg.optimizer, seed);
    const CostSpectrum spectrum = build_spectrum(qubo);
    const Statevector state = prepare_state(n, spectrum, opt.params);
    auto samples = sample_bitstrings(state, cfg.shots, seed);

    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
    std::uint64_t best = samples.front();
    for (auto s : samples) {
        // Equal energies keep the lowest basis index.
        if (spectrum[s] < spectrum[best]) best = s;
    }
    r.best_bitstring = bits_from_index(best, n);
    r.best_energy = qubo_eval(qubo, r.best_bitstring);
    r.samples_evaluated = cfg.shots;
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::string qaoa_diagnostics_json(const CostSpectrum& spectrum, const Statevector& state, const QaoaParams& params) {
    require_size(state, spectrum, "qaoa_diagnostics_json");
    nlohmann::json doc;
    doc["num_qubits"] = qubit_count(state.size());
    doc["cost_angles"] = params.cost_angles;
    doc["mixer_angles"] = params.mixer_angles;
    doc["spectrum"] = spectrum;
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (const auto& a : state) {
        re.push_back(a.real());
        im.push_back(a.imag());
    }
    doc["amplitudes_re"] = std::move(re);
    doc["amplitudes_im"] = std::move(im);
    return doc.dump(2);
}

}  // namespace qedge
