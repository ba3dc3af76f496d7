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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qedge/common.hpp"
#include "qedge/instance.hpp"

namespace qedge {

using Bits = std::vector<std::uint8_t>;

struct VarLabel {
    enum class Role { kPlacement, kSlack, kOther };
    Role role = Role::kOther;
    std::size_t index = 0;

    friend bool operator==(const VarLabel&, const VarLabel&) = default;
};

/// Quadratic pseudo-boolean function offset + sum_{i<=j} Q_ij b_i b_j.
/// Keys always satisfy i <= j; entries with |Q_ij| < 1e-14 are not stored.
class Qubo {
public:
    static constexpr double kPruneBelow = 1e-14;

    Qubo() = default;
    explicit Qubo(std::size_t num_vars);
    Qubo(std::size_t num_vars, std::vector<VarLabel> labels);

    std::size_t num_vars() const noexcept { return num_vars_; }
    double offset() const noexcept { return offset_; }
    const std::map<std::pair<std::size_t, std::size_t>, double>& coeffs() const noexcept { return coeffs_; }
    const std::vector<VarLabel>& labels() const noexcept { return labels_; }

    /// Accumulates into Q_{min(i,j), max(i,j)}.
    void add(std::size_t i, std::size_t j, double value);
    void add_offset(double value) { offset_ += value; }
    double coeff(std::size_t i, std::size_t j) const;

    /// Adds every term of `other` (same variable count) into this one.
    void accumulate(const Qubo& other);

    /// Largest |Q_ij| over stored entries, 0 for an empty QUBO.
    double max_abs_coeff() const;

    /// Dense symmetric matrix with Q_ii on the diagonal and Q_ij / 2 off it.
    std::vector<double> dense_symmetric() const;

private:
    std::size_t num_vars_ = 0;
    std::map<std::pair<std::size_t, std::size_t>, double> coeffs_;
    double offset_ = 0.0;
    std::vector<VarLabel> labels_;
};

/// Exact energy; throws Error(kParameter) on length mismatch.
double qubo_eval(const Qubo& qubo, std::span<const std::uint8_t> bits);

/// Energy of basis index `state`, qubit/variable 0 being the least
/// significant bit.
double qubo_eval_index(const Qubo& qubo, std::uint64_t state);
Bits bits_from_index(std::uint64_t state, std::size_t num_vars);
std::uint64_t index_from_bits(std::span<const std::uint8_t> bits);

struct IsingModel {
    std::vector<double> fields;                                   ///< h_i
    std::map<std::pair<std::size_t, std::size_t>, double> couplings;  ///< J_ij, i < j
    double constant = 0.0;

    std::size_t num_spins() const noexcept { return fields.size(); }
};

/// Energy over spins s_i in {-1, +1}: constant + sum h_i s_i + sum J_ij s_i s_j.
double ising_eval(const IsingModel& model, std::span<const int> spins);

/// Substitution b = (1 - s) / 2; energies agree configuration by configuration.
IsingModel qubo_to_ising(const Qubo& qubo);
/// Inverse substitution s = 1 - 2b.
Qubo ising_to_qubo(const IsingModel& model);

struct BudgetConfig {
    std::size_t slack_bits = 4;   ///< K
    std::optional<double> mu;     ///< unset: 10 * max|objective diagonal| / delta^2
    /// When sum_n h_n <= B the budget can never bind; the penalty is then left
    /// out and the K slack bits stay as free variables.
    bool drop_redundant = true;
};

/// mu * (sum_n h_n z_n + delta * sum_k 2^k w_k - B)^2 over N placement bits
/// followed by K slack bits, delta = B / (2^K - 1). With K = 0 the penalty is
/// mu * (h^T z - B)^2, which also punishes under-spending; test use only.
Qubo encode_budget_penalty(std::span<const double> costs, double budget, double mu, std::size_t slack_bits);

/// Slack quantum B / (2^K - 1) (0 when K = 0).
double budget_slack_step(double budget, std::size_t slack_bits);

/// Placement block of the ADMM iteration. Minimizes over z in {0,1}^N
///   h^T z + sum_n [ y_n (a_n - C_n z_n) + rho/2 (a_n - C_n z_n)^2 ] + budget penalty
/// with a_n = sum_m x_{m,n} + s_n. Since z_n^2 = z_n the coupling terms only
/// touch the diagonal; off-diagonal entries come from the budget penalty.
Qubo build_z_subproblem_qubo(const ProblemInstance& instance, const Matrix& x, std::span<const double> slack,
                             std::span<const double> duals, double rho_admm, const BudgetConfig& budget);

/// Value of the written z-subproblem objective for a full bitstring
/// (placement bits, then slack bits). Independent of the QUBO expansion; used
/// as the energy-equality oracle.
double z_subproblem_objective(const ProblemInstance& instance, const Matrix& x, std::span<const double> slack,
                              std::span<const double> duals, double rho_admm, const BudgetConfig& budget,
                              std::span<const std::uint8_t> bits);

/// Plain-text export: comment header, then "i j value" per stored entry.
std::string qubo_to_text(const Qubo& qubo);
Qubo qubo_from_text(const std::string& text);

}  // namespace qedge
