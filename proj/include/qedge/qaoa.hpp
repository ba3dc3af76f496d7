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

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qedge/backends.hpp"
#include "qedge/qubo.hpp"

namespace qedge {

// Basis index j encodes qubit i as bit i of j (qubit 0 least significant);
// qubit i carries QUBO variable i.

inline constexpr std::size_t kQaoaMaxQubits = 20;

struct QaoaParams {
    std::vector<double> cost_angles;   ///< gamma_1..gamma_p, multiply H_C
    std::vector<double> mixer_angles;  ///< alpha_1..alpha_p, multiply H_A = sum_i X_i

    std::size_t depth() const noexcept { return cost_angles.size(); }
};

using Amplitude = std::complex<double>;
using Statevector = std::vector<Amplitude>;
/// Diagonal of H_C: entry j is the QUBO energy of basis state j.
using CostSpectrum = std::vector<double>;

CostSpectrum build_spectrum(const Qubo& qubo);

/// |+>^n, every amplitude 2^{-n/2}. Throws Error(kCapacity) unless 1 <= n <= 20.
Statevector init_uniform_state(std::size_t num_qubits);

/// amp_j <- amp_j * exp(-i gamma E_j).
void apply_cost_phase(Statevector& state, const CostSpectrum& spectrum, double gamma);

/// exp(-i alpha X) on every qubit.
void apply_mixer(Statevector& state, double alpha);

/// sum_j |amp_j|^2 E_j with compensated summation in index order.
double evaluate_expectation(const Statevector& state, const CostSpectrum& spectrum);

/// U(alpha, gamma) |+>^n = prod_j exp(-i alpha_j H_A) exp(-i gamma_j H_C) |+>^n.
Statevector prepare_state(std::size_t num_qubits, const CostSpectrum& spectrum, const QaoaParams& params);

struct QaoaOptimizerConfig {
    std::size_t restarts = 5;
    std::size_t evals_per_layer = 200;  ///< budget per start = evals_per_layer * p
    double xtol = 1e-4;                 ///< simplex size at convergence
    double initial_step = 0.25;         ///< simplex edge, radians (normalized spectrum)
};

struct QaoaOptimum {
    QaoaParams params;
    double expectation = 0.0;
    std::size_t evaluations = 0;
};

/// Multi-start Nelder-Mead over the 2p angles, minimizing the exact
/// expectation. Starts are uniform on [0, pi) per angle against the spectrum
/// rescaled to [0, 1]; the all-zero angle vector is always a candidate.
/// Returned cost angles apply to the unscaled spectrum.
QaoaOptimum optimize_parameters(const Qubo& qubo, std::size_t depth, const QaoaOptimizerConfig& config,
                                std::uint64_t seed);

/// i.i.d. basis-state indices drawn from |amp_j|^2.
std::vector<std::uint64_t> sample_bitstrings(const Statevector& state, std::size_t shots, std::uint64_t seed);

struct QaoaConfig {
    std::size_t depth = 3;
    std::size_t shots = 1024;
    QaoaOptimizerConfig optimizer;
};

/// Optimize angles, prepare the final state, sample `shots` bitstrings and
/// return the lowest-energy sample.
QuboSolverResult solve_qaoa(const Qubo& qubo, const QaoaConfig& config, std::uint64_t seed);

/// Spectrum, final amplitudes and angles as a JSON document for plotting.
std::string qaoa_diagnostics_json(const CostSpectrum& spectrum, const Statevector& state, const QaoaParams& params);

}  // namespace qedge
