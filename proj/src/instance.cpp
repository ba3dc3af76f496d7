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

#include "qedge/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include <json.hpp>

#include "qedge/rng.hpp"

namespace qedge {

using json = nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& msg) {
    throw Error(ErrorKind::kValidation, "invalid instance: " + msg);
}

void check_vector(const std::vector<double>& v, std::size_t expected, const char* name,
                  bool strictly_positive) {
    if (v.size() != expected) {
        invalid(std::string(name) + " has length " + std::to_string(v.size()) + ", expected " +
                std::to_string(expected));
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        const bool bad = !std::isfinite(v[i]) || v[i] < 0.0 || (strictly_positive && v[i] == 0.0);
        if (bad) {
            invalid(std::string(name) + "[" + std::to_string(i) + "] = " + std::to_string(v[i]) +
                    (strictly_positive ? " must be finite and > 0" : " must be finite and >= 0"));
        }
    }
}

void check_scalar(double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) invalid(std::string(name) + " must be finite and >= 0");
}

void validate_topology(const Topology& t) {
    if (t.node_count < 1) invalid("topology.node_count must be positive");
    for (const auto& e : t.edges) {
        if (e.u < 0 || e.v < 0 || e.u >= t.node_count || e.v >= t.node_count) {
            invalid("topology edge endpoint out of range");
        }
        if (e.u == e.v) invalid("topology contains a self-loop");
        if (!(e.delay_ms > 0.0) || !std::isfinite(e.delay_ms)) {
            invalid("topology edge delay must be finite and > 0");
        }
    }
    std::vector<char> used(static_cast<std::size_t>(t.node_count), 0);
    for (const auto* nodes : {&t.area_nodes, &t.en_nodes}) {
        for (int v : *nodes) {
            if (v < 0 || v >= t.node_count) invalid("topology marked node out of range");
            if (used[static_cast<std::size_t>(v)]) invalid("topology marked nodes are not distinct");
            used[static_cast<std::size_t>(v)] = 1;
        }
    }
}

}  // namespace

bool ProblemInstance::no_placement_affordable() const {
    return std::none_of(placement_cost.begin(), placement_cost.end(),
                        [this](double h) { return h <= budget; });
}

void validate(const ProblemInstance& inst) {
    check_vector(inst.demand, inst.m, "demand", false);
    check_vector(inst.capacity, inst.n, "capacity", true);
    check_vector(inst.placement_cost, inst.n, "placement_cost", false);
    check_vector(inst.unmet_penalty, inst.m, "unmet_penalty", false);
    check_scalar(inst.budget, "budget");
    check_scalar(inst.delay_penalty, "delay_penalty");
    if (inst.delay.rows() != inst.m || inst.delay.cols() != inst.n) {
        invalid("delay matrix is " + std::to_string(inst.delay.rows()) + "x" +
                std::to_string(inst.delay.cols()) + ", expected " + std::to_string(inst.m) + "x" +
                std::to_string(inst.n));
    }
    for (double d : inst.delay.data()) {
        if (!std::isfinite(d) || d < 0.0) invalid("delay entries must be finite and >= 0");
    }
    if (inst.topology) validate_topology(*inst.topology);
}

Topology generate_topology(int node_count, int attach_degree, std::uint64_t seed) {
    if (attach_degree < 1 || node_count < attach_degree + 1) {
        throw_parameter("generate_topology: need node_count >= attach_degree + 1 >= 2 (got node_count=" +
                        std::to_string(node_count) + ", attach_degree=" +
                        std::to_string(attach_degree) + ")");
    }
    Topology topo;
    topo.node_count = node_count;

    // Each edge endpoint is appended once, so a uniform pick from this list
    // selects a node with probability proportional to its degree.
    std::vector<int> endpoints;
    const int core = attach_degree + 1;
    for (int a = 0; a < core; ++a) {
        for (int b = a + 1; b < core; ++b) {
            topo.edges.push_back({a, b, 0.0});
            endpoints.push_back(a);
            endpoints.push_back(b);
        }
    }

    Rng rng(seed, Rng::Stream::kTopology);
    std::vector<int> targets;
    for (int v = core; v < node_count; ++v) {
        targets.clear();
        while (static_cast<int>(targets.size()) < attach_degree) {
            const int t = endpoints[rng.below(endpoints.size())];
            if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
        }
        for (int t : targets) {
            topo.edges.push_back({t, v, 0.0});
            endpoints.push_back(t);
            endpoints.push_back(v);
        }
    }

    Rng delay_rng(seed, Rng::Stream::kDelays);
    for (auto& e : topo.edges) e.delay_ms = delay_rng.uniform(2.0, 5.0);
    return topo;
}

Matrix shortest_path_delays(const Topology& topo) {
    const auto nodes = static_cast<std::size_t>(topo.node_count);
    std::vector<std::vector<std::pair<int, double>>> adj(nodes);
    for (const auto& e : topo.edges) {
        adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.delay_ms);
        adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.delay_ms);
    }

    Matrix d(topo.area_nodes.size(), topo.en_nodes.size());
    std::vector<double> dist(nodes);
    using Item = std::pair<double, int>;
    for (std::size_t i = 0; i < topo.area_nodes.size(); ++i) {
        std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        const int src = topo.area_nodes[i];
        dist[static_cast<std::size_t>(src)] = 0.0;
        heap.emplace(0.0, src);
        while (!heap.empty()) {
            const auto [du, u] = heap.top();
            heap.pop();
            if (du > dist[static_cast<std::size_t>(u)]) continue;
            for (const auto& [v, w] : adj[static_cast<std::size_t>(u)]) {
                if (du + w < dist[static_cast<std::size_t>(v)]) {
                    dist[static_cast<std::size_t>(v)] = du + w;
                    heap.emplace(du + w, v);
                }
            }
        }
        for (std::size_t j = 0; j < topo.en_nodes.size(); ++j) {
            const double v = dist[static_cast<std::size_t>(topo.en_nodes[j])];
            if (!std::isfinite(v)) {
                throw Error(ErrorKind::kValidation,
                            "shortest_path_delays: area node " + std::to_string(src) +
                                " cannot reach EN node " + std::to_string(topo.en_nodes[j]));
            }
            d(i, j) = v;
        }
    }
    return d;
}

ProblemInstance generate_instance(const GenConfig& cfg) {
    const std::size_t wanted = cfg.areas + cfg.ens;
    const int node_count = cfg.node_count.value_or(std::max<int>(50, static_cast<int>(wanted)));
    if (wanted > static_cast<std::size_t>(std::max(node_count, 0))) {
        throw_parameter("generate_instance: areas + ens = " + std::to_string(wanted) +
                        " exceeds node_count = " + std::to_string(node_count));
    }
    if (cfg.capacity_ladder.empty()) throw_parameter("generate_instance: empty capacity ladder");
    if (cfg.demand_hi < cfg.demand_lo || cfg.cost_hi < cfg.cost_lo) {
        throw_parameter("generate_instance: inverted sampling range");
    }

    Topology topo = generate_topology(node_count, cfg.attach_degree, cfg.seed);

    // Partial Fisher-Yates: the first `wanted` entries are a uniform sample
    // without replacement; areas come first.
    std::vector<int> order(static_cast<std::size_t>(node_count));
    std::iota(order.begin(), order.end(), 0);
    Rng map_rng(cfg.seed, Rng::Stream::kNodeMapping);
    for (std::size_t i = 0; i < wanted; ++i) {
        const std::size_t j = i + map_rng.below(order.size() - i);
        std::swap(order[i], order[j]);
    }
    topo.area_nodes.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cfg.areas));
    topo.en_nodes.assign(order.begin() + static_cast<std::ptrdiff_t>(cfg.areas),
                         order.begin() + static_cast<std::ptrdiff_t>(wanted));

    ProblemInstance inst;
    inst.m = cfg.areas;
    inst.n = cfg.ens;
    inst.delay = shortest_path_delays(topo);

    Rng cap_rng(cfg.seed, Rng::Stream::kCapacities);
    Rng cost_rng(cfg.seed, Rng::Stream::kCosts);
    for (std::size_t j = 0; j < inst.n; ++j) {
        inst.capacity.push_back(cfg.capacity_ladder[cap_rng.below(cfg.capacity_ladder.size())]);
        inst.placement_cost.push_back(cost_rng.uniform(cfg.cost_lo, cfg.cost_hi));
    }
    Rng demand_rng(cfg.seed, Rng::Stream::kDemands);
    for (std::size_t i = 0; i < inst.m; ++i) {
        inst.demand.push_back(demand_rng.uniform(cfg.demand_lo, cfg.demand_hi));
    }
    inst.unmet_penalty.assign(inst.m, cfg.unmet_penalty);
    inst.budget = cfg.budget;
    inst.delay_penalty = cfg.delay_penalty;
    inst.seed = cfg.seed;
    inst.generator_version = std::string(Rng::kVersion);
    if (cfg.embed_topology) inst.topology = std::move(topo);

    validate(inst);
    return inst;
}

ProblemInstance restrict_areas(const ProblemInstance& inst, std::size_t m_keep) {
    if (m_keep < 1 || m_keep > inst.m) {
        throw_parameter("restrict_areas: m_keep = " + std::to_string(m_keep) +
                        " outside [1, " + std::to_string(inst.m) + "]");
    }
    ProblemInstance out = inst;
    out.m = m_keep;
    out.demand.resize(m_keep);
    out.unmet_penalty.resize(m_keep);
    out.delay = Matrix(m_keep, inst.n);
    for (std::size_t i = 0; i < m_keep; ++i) {
        for (std::size_t j = 0; j < inst.n; ++j) out.delay(i, j) = inst.delay(i, j);
    }
    if (out.topology) out.topology->area_nodes.resize(m_keep);
    return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

const json& field(const json& doc, const char* name) {
    auto it = doc.find(name);
    if (it == doc.end()) {
        throw Error(ErrorKind::kParse, std::string("instance document: missing field \"") + name + "\"");
    }
    return *it;
}

template <class T>
T get_as(const json& doc, const char* name) {
    try {
        return field(doc, name).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::kParse,
                    std::string("instance document: field \"") + name + "\": " + e.what());
    }
}

}  // namespace

std::string instance_to_json(const ProblemInstance& inst) {
    json doc;
    doc["m"] = inst.m;
    doc["n"] = inst.n;
    doc["demand"] = inst.demand;
    doc["capacity"] = inst.capacity;
    doc["placement_cost"] = inst.placement_cost;
    doc["budget"] = inst.budget;
    doc["delay_penalty"] = inst.delay_penalty;
    doc["unmet_penalty"] = inst.unmet_penalty;
    json rows = json::array();
    for (std::size_t i = 0; i < inst.m; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < inst.n; ++j) row.push_back(inst.delay(i, j));
        rows.push_back(std::move(row));
    }
    doc["delay"] = std::move(rows);
    doc["seed"] = inst.seed;
    doc["generator_version"] = inst.generator_version;
    if (inst.topology) {
        const auto& t = *inst.topology;
        json edges = json::array();
        for (const auto& e : t.edges) edges.push_back(json::array({e.u, e.v, e.delay_ms}));
        doc["topology"] = {{"node_count", t.node_count},
                           {"edges", std::move(edges)},
                           {"area_nodes", t.area_nodes},
                           {"en_nodes", t.en_nodes}};
    }
    // nlohmann::json prints doubles with max_digits10, which round-trips.
    return doc.dump(2) + "\n";
}

ProblemInstance instance_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::kParse, std::string("instance document: ") + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorKind::kParse, "instance document: top level must be an object");

    ProblemInstance inst;
    inst.m = get_as<std::size_t>(doc, "m");
    inst.n = get_as<std::size_t>(doc, "n");
    inst.demand = get_as<std::vector<double>>(doc, "demand");
    inst.capacity = get_as<std::vector<double>>(doc, "capacity");
    inst.placement_cost = get_as<std::vector<double>>(doc, "placement_cost");
    inst.budget = get_as<double>(doc, "budget");
    inst.delay_penalty = get_as<double>(doc, "delay_penalty");
    inst.unmet_penalty = get_as<std::vector<double>>(doc, "unmet_penalty");
    const auto rows = get_as<std::vector<std::vector<double>>>(doc, "delay");
    if (rows.size() != inst.m) {
        throw Error(ErrorKind::kParse, "instance document: field \"delay\" must have m rows");
    }
    inst.delay = Matrix(inst.m, inst.n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != inst.n) {
            throw Error(ErrorKind::kParse, "instance document: field \"delay\" row " +
                                               std::to_string(i) + " must have n entries");
        }
        for (std::size_t j = 0; j < inst.n; ++j) inst.delay(i, j) = rows[i][j];
    }
    inst.seed = get_as<std::uint64_t>(doc, "seed");
    inst.generator_version = get_as<std::string>(doc, "generator_version");

    if (auto it = doc.find("topology"); it != doc.end() && !it->is_null()) {
        Topology t;
        try {
            t.node_count = it->at("node_count").get<int>();
            for (const auto& e : it->at("edges")) {
                t.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
            }
            t.area_nodes = it->at("area_nodes").get<std::vector<int>>();
            t.en_nodes = it->at("en_nodes").get<std::vector<int>>();
        } catch (const json::exception& e) {
            throw Error(ErrorKind::kParse, std::string("instance document: field \"topology\": ") + e.what());
        }
        inst.topology = std::move(t);
    }
    validate(inst);
    return inst;
}

void save_instance(const ProblemInstance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::kIo, "cannot open " + path + " for writing");
    out << instance_to_json(inst);
    if (!out) throw Error(ErrorKind::kIo, "failed writing " + path);
}

ProblemInstance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return instance_from_json(buf.str());
}

}  // namespace qedge
