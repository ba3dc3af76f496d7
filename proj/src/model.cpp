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

#include "qedge/model.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace qedge {

using json = nlohmann::json;

namespace {

void require_dims(const ProblemInstance& inst, const Placement* p, const Allocation* a) {
    if (p && p->size() != inst.n) {
        throw_parameter("placement has length " + std::to_string(p->size()) + ", instance has n = " +
                        std::to_string(inst.n));
    }
    if (a && (a->x.rows() != inst.m || a->x.cols() != inst.n || a->u.size() != inst.m)) {
        throw_parameter("allocation dimensions do not match instance (m = " + std::to_string(inst.m) +
                        ", n = " + std::to_string(inst.n) + ")");
    }
}

}  // namespace

std::size_t Placement::open_count() const {
    std::size_t c = 0;
    for (auto b : z) c += b != 0;
    return c;
}

std::string Placement::to_string() const {
    std::string s;
    s.reserve(z.size());
    for (auto b : z) s.push_back(b ? '1' : '0');
    return s;
}

double placement_cost(const ProblemInstance& inst, const Placement& p) {
    require_dims(inst, &p, nullptr);
    double sum = 0.0;
    for (std::size_t j = 0; j < inst.n; ++j) {
        if (p.open(j)) sum += inst.placement_cost[j];
    }
    return sum;
}

double delay_cost(const ProblemInstance& inst, const Allocation& a) {
    require_dims(inst, nullptr, &a);
    double sum = 0.0;
    for (std::size_t i = 0; i < inst.m; ++i) {
        for (std::size_t j = 0; j < inst.n; ++j) sum += inst.delay(i, j) * a.x(i, j);
    }
    return inst.delay_penalty * sum;
}

double unmet_cost(const ProblemInstance& inst, const Allocation& a) {
    require_dims(inst, nullptr, &a);
    double sum = 0.0;
    for (std::size_t i = 0; i < inst.m; ++i) sum += inst.unmet_penalty[i] * a.u[i];
    return sum;
}

CostBreakdown total_objective(const ProblemInstance& inst, const Placement& p, const Allocation& a) {
    CostBreakdown c;
    c.placement = placement_cost(inst, p);
    c.delay = delay_cost(inst, a);
    c.unmet = unmet_cost(inst, a);
    c.total = c.placement + c.delay + c.unmet;
    return c;
}

CostBreakdown total_objective(const ProblemInstance& inst, const Solution& s) {
    return total_objective(inst, s.placement, s.allocation);
}

const char* constraint_name(Constraint c) {
    switch (c) {
        case Constraint::kBudget: return "C1-budget";
        case Constraint::kCapacity: return "C2-capacity";
        case Constraint::kDemandBalance: return "C3-balance";
        case Constraint::kIntegrality: return "C4-integrality";
        case Constraint::kSign: return "C5-sign";
    }
    return "unknown";
}

std::string ViolationReport::to_string() const {
    std::ostringstream out;
    for (const auto& v : violations) {
        out << constraint_name(v.constraint) << "[" << v.index << "] residual " << v.residual << "\n";
    }
    return out.str();
}

ViolationReport check_feasibility(const ProblemInstance& inst, const Solution& s, double tol) {
    if (tol < 0.0) throw_parameter("check_feasibility: tol must be >= 0");
    const auto& p = s.placement;
    const auto& a = s.allocation;
    require_dims(inst, &p, &a);
    ViolationReport report;

    for (std::size_t j = 0; j < inst.n; ++j) {
        if (p.z[j] > 1) report.violations.push_back({Constraint::kIntegrality, j, double(p.z[j]) - 1.0});
    }

    const double over_budget = placement_cost(inst, p) - inst.budget;
    if (over_budget > tol) report.violations.push_back({Constraint::kBudget, 0, over_budget});

    for (std::size_t j = 0; j < inst.n; ++j) {
        double load = 0.0;
        for (std::size_t i = 0; i < inst.m; ++i) load += a.x(i, j);
        const double residual = load - inst.capacity[j] * (p.open(j) ? 1.0 : 0.0);
        if (residual > tol) report.violations.push_back({Constraint::kCapacity, j, residual});
    }

    for (std::size_t i = 0; i < inst.m; ++i) {
        double served = 0.0;
        for (std::size_t j = 0; j < inst.n; ++j) served += a.x(i, j);
        const double residual = std::abs(served + a.u[i] - inst.demand[i]);
        if (!(residual <= tol)) report.violations.push_back({Constraint::kDemandBalance, i, residual});
    }

    for (std::size_t k = 0; k < a.x.data().size(); ++k) {
        if (a.x.data()[k] < -tol) report.violations.push_back({Constraint::kSign, k, -a.x.data()[k]});
    }
    for (std::size_t i = 0; i < inst.m; ++i) {
        if (a.u[i] < -tol) {
            report.violations.push_back({Constraint::kSign, a.x.data().size() + i, -a.u[i]});
        }
    }
    return report;
}

std::string solution_to_json(const Solution& s) {
    json doc;
    doc["z"] = s.placement.z;
    json rows = json::array();
    for (std::size_t i = 0; i < s.allocation.x.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < s.allocation.x.cols(); ++j) row.push_back(s.allocation.x(i, j));
        rows.push_back(std::move(row));
    }
    doc["x"] = std::move(rows);
    doc["u"] = s.allocation.u;
    doc["cost"] = {{"placement", s.cost.placement},
                   {"delay", s.cost.delay},
                   {"unmet", s.cost.unmet},
                   {"total", s.cost.total}};
    return doc.dump(2);
}

Solution solution_from_json(const std::string& text) {
    try {
        const json doc = json::parse(text);
        Solution s;
        s.placement.z = doc.at("z").get<std::vector<std::uint8_t>>();
        const auto rows = doc.at("x").get<std::vector<std::vector<double>>>();
        const std::size_t cols = s.placement.size();
        s.allocation.x = Matrix(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw Error(ErrorKind::kParse, "solution document: ragged \"x\"");
            for (std::size_t j = 0; j < cols; ++j) s.allocation.x(i, j) = rows[i][j];
        }
        s.allocation.u = doc.at("u").get<std::vector<double>>();
        const auto& c = doc.at("cost");
        s.cost = {c.at("placement").get<double>(), c.at("delay").get<double>(),
                  c.at("unmet").get<double>(), c.at("total").get<double>()};
        return s;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::kParse, std::string("solution document: ") + e.what());
    }
}

}  // namespace qedge
