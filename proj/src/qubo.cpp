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

#include "qedge/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace qedge {

Qubo::Qubo(std::size_t num_vars) : num_vars_(num_vars), labels_(num_vars) {}

Qubo::Qubo(std::size_t num_vars, std::vector<VarLabel> labels)
    : num_vars_(num_vars), labels_(std::move(labels)) {
    if (labels_.size() != num_vars_) throw_parameter("Qubo: label count must equal num_vars");
}

void Qubo::add(std::size_t i, std::size_t j, double value) {
    if (i >= num_vars_ || j >= num_vars_) throw_parameter("Qubo::add: index out of range");
    if (i > j) std::swap(i, j);
    auto it = coeffs_.find({i, j});
    if (it == coeffs_.end()) {
        if (std::abs(value) >= kPruneBelow) coeffs_.emplace(std::make_pair(i, j), value);
        return;
    }
    it->second += value;
    if (std::abs(it->second) < kPruneBelow) coeffs_.erase(it);
}

double Qubo::coeff(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    auto it = coeffs_.find({i, j});
    return it == coeffs_.end() ? 0.0 : it->second;
}

void Qubo::accumulate(const Qubo& other) {
    if (other.num_vars_ != num_vars_) throw_parameter("Qubo::accumulate: variable count mismatch");
    for (const auto& [key, v] : other.coeffs_) add(key.first, key.second, v);
    offset_ += other.offset_;
}

double Qubo::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [key, v] : coeffs_) m = std::max(m, std::abs(v));
    return m;
}

std::vector<double> Qubo::dense_symmetric() const {
    std::vector<double> q(num_vars_ * num_vars_, 0.0);
    for (const auto& [key, v] : coeffs_) {
        const auto [i, j] = key;
        if (i == j) {
            q[i * num_vars_ + i] = v;
        } else {
            q[i * num_vars_ + j] = 0.5 * v;
            q[j * num_vars_ + i] = 0.5 * v;
        }
    }
    return q;
}

double qubo_eval(const Qubo& qubo, std::span<const std::uint8_t> bits) {
    if (bits.size() != qubo.num_vars()) {
        throw_parameter("qubo_eval: bitstring has length " + std::to_string(bits.size()) + ", QUBO has " +
                        std::to_string(qubo.num_vars()) + " variables");
    }
    double e = qubo.offset();
    for (const auto& [key, v] : qubo.coeffs()) {
        if (bits[key.first] && bits[key.second]) e += v;
    }
    return e;
}

double qubo_eval_index(const Qubo& qubo, std::uint64_t state) {
    double e = qubo.offset();
    for (const auto& [key, v] : qubo.coeffs()) {
        if (((state >> key.first) & 1u) && ((state >> key.second) & 1u)) e += v;
    }
    return e;
}

Bits bits_from_index(std::uint64_t state, std::size_t num_vars) {
    Bits b(num_vars);
    for (std::size_t i = 0; i < num_vars; ++i) b[i] = static_cast<std::uint8_t>((state >> i) & 1u);
    return b;
}

std::uint64_t index_from_bits(std::span<const std::uint8_t> bits) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) s |= std::uint64_t{1} << i;
    }
    return s;
}

double ising_eval(const IsingModel& model, std::span<const int> spins) {
    if (spins.size() != model.num_spins()) throw_parameter("ising_eval: spin count mismatch");
    double e = model.constant;
    for (std::size_t i = 0; i < spins.size(); ++i) e += model.fields[i] * spins[i];
    for (const auto& [key, j] : model.couplings) e += j * spins[key.first] * spins[key.second];
    return e;
}

IsingModel qubo_to_ising(const Qubo& qubo) {
    IsingModel ising;
    ising.fields.assign(qubo.num_vars(), 0.0);
    ising.constant = qubo.offset();
    for (const auto& [key, q] : qubo.coeffs()) {
        const auto [i, j] = key;
        if (i == j) {
            // q b = q (1 - s) / 2
            ising.constant += 0.5 * q;
            ising.fields[i] -= 0.5 * q;
        } else {
            // q b_i b_j = q (1 - s_i - s_j + s_i s_j) / 4
            ising.constant += 0.25 * q;
            ising.fields[i] -= 0.25 * q;
            ising.fields[j] -= 0.25 * q;
            ising.couplings[{i, j}] += 0.25 * q;
        }
    }
    return ising;
}

Qubo ising_to_qubo(const IsingModel& model) {
    Qubo qubo(model.num_spins());
    qubo.add_offset(model.constant);
    for (std::size_t i = 0; i < model.num_spins(); ++i) {
        // h s = h (1 - 2b)
        qubo.add_offset(model.fields[i]);
        qubo.add(i, i, -2.0 * model.fields[i]);
    }
    for (const auto& [key, j] : model.couplings) {
        // J s_i s_j = J (1 - 2b_i - 2b_j + 4 b_i b_j)
        qubo.add_offset(j);
        qubo.add(key.first, key.first, -2.0 * j);
        qubo.add(key.second, key.second, -2.0 * j);
        qubo.add(key.first, key.second, 4.0 * j);
    }
    return qubo;
}

double budget_slack_step(double budget, std::size_t slack_bits) {
    if (slack_bits == 0) return 0.0;
    return budget / static_cast<double>((std::uint64_t{1} << slack_bits) - 1);
}

Qubo encode_budget_penalty(std::span<const double> costs, double budget, double mu, std::size_t slack_bits) {
    if (!(mu > 0.0)) throw_parameter("encode_budget_penalty: mu must be > 0");
    if (slack_bits > 0 && !(budget > 0.0)) {
        throw_parameter("encode_budget_penalty: budget must be > 0 when slack bits are used");
    }
    if (slack_bits > 52) throw_parameter("encode_budget_penalty: too many slack bits");
    const std::size_t n = costs.size();
    std::vector<VarLabel> labels;
    for (std::size_t j = 0; j < n; ++j) labels.push_back({VarLabel::Role::kPlacement, j});
    for (std::size_t k = 0; k < slack_bits; ++k) labels.push_back({VarLabel::Role::kSlack, k});
    Qubo q(n + slack_bits, std::move(labels));

    // (sum_i c_i b_i - B)^2 = sum_i (c_i^2 - 2 B c_i) b_i + 2 sum_{i<j} c_i c_j b_i b_j + B^2
    std::vector<double> c(costs.begin(), costs.end());
    const double delta = budget_slack_step(budget, slack_bits);
    for (std::size_t k = 0; k < slack_bits; ++k) c.push_back(delta * static_cast<double>(std::uint64_t{1} << k));
    for (std::size_t i = 0; i < c.size(); ++i) {
        q.add(i, i, mu * (c[i] * c[i] - 2.0 * budget * c[i]));
        for (std::size_t j = i + 1; j < c.size(); ++j) q.add(i, j, 2.0 * mu * c[i] * c[j]);
    }
    q.add_offset(mu * budget * budget);
    return q;
}

namespace {

bool penalty_active(const ProblemInstance& inst, const BudgetConfig& cfg) {
    if (!cfg.drop_redundant) return true;
    const double spend_all = std::accumulate(inst.placement_cost.begin(), inst.placement_cost.end(), 0.0);
    return spend_all > inst.budget;
}

void check_block_inputs(const ProblemInstance& inst, const Matrix& x, std::span<const double> slack,
                        std::span<const double> duals, double rho_admm) {
    if (!(rho_admm > 0.0)) throw_parameter("z-subproblem: rho_admm must be > 0");
    if (x.rows() != inst.m || x.cols() != inst.n || slack.size() != inst.n || duals.size() != inst.n) {
        throw_parameter("z-subproblem: dimension mismatch");
    }
}

std::vector<double> coupling_load(const ProblemInstance& inst, const Matrix& x, std::span<const double> slack) {
    std::vector<double> a(slack.begin(), slack.end());
    for (std::size_t i = 0; i < inst.m; ++i) {
        for (std::size_t j = 0; j < inst.n; ++j) a[j] += x(i, j);
    }
    return a;
}

double resolve_mu(const ProblemInstance& inst, std::span<const double> load, std::span<const double> duals,
                  double rho_admm, const BudgetConfig& cfg) {
    if (cfg.mu) return *cfg.mu;
    double max_diag = 0.0;
    for (std::size_t j = 0; j < inst.n; ++j) {
        const double cj = inst.capacity[j];
        const double diag = inst.placement_cost[j] + 0.5 * rho_admm * cj * cj - rho_admm * load[j] * cj - duals[j] * cj;
        max_diag = std::max(max_diag, std::abs(diag));
    }
    if (max_diag == 0.0) max_diag = 1.0;
    const double delta = budget_slack_step(inst.budget, cfg.slack_bits);
    const double scale = delta > 0.0 ? delta : std::max(inst.budget, 1.0);
    return 10.0 * max_diag / (scale * scale);
}

}  // namespace

Qubo build_z_subproblem_qubo(const ProblemInstance& inst, const Matrix& x, std::span<const double> slack,
                             std::span<const double> duals, double rho_admm, const BudgetConfig& cfg) {
    check_block_inputs(inst, x, slack, duals, rho_admm);
    const auto a = coupling_load(inst, x, slack);
    const std::size_t n = inst.n;
    const std::size_t k_bits = cfg.slack_bits;

    std::vector<VarLabel> labels;
    for (std::size_t j = 0; j < n; ++j) labels.push_back({VarLabel::Role::kPlacement, j});
    for (std::size_t k = 0; k < k_bits; ++k) labels.push_back({VarLabel::Role::kSlack, k});
    Qubo q(n + k_bits, std::move(labels));

    // y (a - C z) + rho/2 (a - C z)^2 with z^2 = z:
    //   constant y a + rho/2 a^2, linear h + rho/2 C^2 - rho a C - y C
    for (std::size_t j = 0; j < n; ++j) {
        const double cj = inst.capacity[j];
        q.add(j, j, inst.placement_cost[j] + 0.5 * rho_admm * cj * cj - rho_admm * a[j] * cj - duals[j] * cj);
        q.add_offset(duals[j] * a[j] + 0.5 * rho_admm * a[j] * a[j]);
    }

    if (penalty_active(inst, cfg)) {
        const double mu = resolve_mu(inst, a, duals, rho_admm, cfg);
        const Qubo penalty = encode_budget_penalty(inst.placement_cost, inst.budget, mu, k_bits);
        for (const auto& [key, v] : penalty.coeffs()) q.add(key.first, key.second, v);
        q.add_offset(penalty.offset());
    }
    return q;
}

double z_subproblem_objective(const ProblemInstance& inst, const Matrix& x, std::span<const double> slack,
                              std::span<const double> duals, double rho_admm, const BudgetConfig& cfg,
                              std::span<const std::uint8_t> bits) {
    check_block_inputs(inst, x, slack, duals, rho_admm);
    if (bits.size() != inst.n + cfg.slack_bits) throw_parameter("z_subproblem_objective: bit count mismatch");
    const auto a = coupling_load(inst, x, slack);
    double value = 0.0;
    double spend = 0.0;
    for (std::size_t j = 0; j < inst.n; ++j) {
        const double zj = bits[j] ? 1.0 : 0.0;
        const double r = a[j] - inst.capacity[j] * zj;
        value += inst.placement_cost[j] * zj + duals[j] * r + 0.5 * rho_admm * r * r;
        spend += inst.placement_cost[j] * zj;
    }
    if (penalty_active(inst, cfg)) {
        const double mu = resolve_mu(inst, a, duals, rho_admm, cfg);
        const double delta = budget_slack_step(inst.budget, cfg.slack_bits);
        double slack_value = 0.0;
        for (std::size_t k = 0; k < cfg.slack_bits; ++k) {
            if (bits[inst.n + k]) slack_value += delta * static_cast<double>(std::uint64_t{1} << k);
        }
        const double r = spend + slack_value - inst.budget;
        value += mu * r * r;
    }
    return value;
}

std::string qubo_to_text(const Qubo& qubo) {
    std::ostringstream out;
    out << std::setprecision(17);
    out << "# qedge QUBO: energy = offset + sum_{i<=j} Q_ij b_i b_j\n";
    out << "# num_vars " << qubo.num_vars() << "\n";
    out << "# offset " << qubo.offset() << "\n";
    for (const auto& [key, v] : qubo.coeffs()) out << key.first << ' ' << key.second << ' ' << v << "\n";
    return out.str();
}

Qubo qubo_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t num_vars = 0;
    double offset = 0.0;
    bool have_size = false;
    std::vector<std::tuple<std::size_t, std::size_t, double>> entries;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        if (line[0] == '#') {
            std::string hash, key;
            fields >> hash >> key;
            if (key == "num_vars") {
                fields >> num_vars;
                have_size = true;
            } else if (key == "offset") {
                fields >> offset;
            }
            continue;
        }
        std::size_t i = 0, j = 0;
        double v = 0.0;
        if (!(fields >> i >> j >> v)) {
            throw Error(ErrorKind::kParse, "qubo text: malformed entry on line " + std::to_string(line_no));
        }
        entries.emplace_back(i, j, v);
    }
    if (!have_size) {
        for (const auto& [i, j, v] : entries) num_vars = std::max({num_vars, i + 1, j + 1});
    }
    Qubo q(num_vars);
    q.add_offset(offset);
    for (const auto& [i, j, v] : entries) q.add(i, j, v);
    return q;
}

}  // namespace qedge
