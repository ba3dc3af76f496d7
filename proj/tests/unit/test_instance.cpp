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

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <set>
#include <string>

#include <json.hpp>

#include "qedge/instance.hpp"
#include "support/oracles.hpp"

namespace qedge {
namespace {

using json = nlohmann::json;

template <class F>
ErrorKind error_kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected qedge::Error";
    return ErrorKind::kSolver;
}

TEST(Topology, ThreeNodesIsATriangle) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto t = generate_topology(3, 2, seed);
        EXPECT_EQ(t.node_count, 3);
        EXPECT_EQ(t.edges.size(), 3u);
        for (const auto& e : t.edges) {
            EXPECT_GE(e.delay_ms, 2.0);
            EXPECT_LE(e.delay_ms, 5.0);
        }
    }
}

TEST(Topology, FiftyNodesHave97Edges) {
    for (std::uint64_t seed : {1u, 2u, 99u}) {
        const auto t = generate_topology(50, 2, seed);
        EXPECT_EQ(t.edges.size(), 97u);
        std::set<std::pair<int, int>> seen;
        for (const auto& e : t.edges) {
            EXPECT_NE(e.u, e.v);
            EXPECT_TRUE(seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second) << "duplicate edge";
        }
    }
}

TEST(Topology, RejectsTooFewNodes) {
    EXPECT_EQ(error_kind_of([] { generate_topology(1, 2, 0); }), ErrorKind::kParameter);
}

TEST(ShortestPaths, SingleEdge) {
    Topology t{2, {{0, 1, 3.0}}, {0}, {1}};
    const Matrix d = shortest_path_delays(t);
    ASSERT_EQ(d.rows(), 1u);
    ASSERT_EQ(d.cols(), 1u);
    EXPECT_DOUBLE_EQ(d(0, 0), 3.0);
}

TEST(ShortestPaths, PrefersTwoHopRoute) {
    // a = 0, v = 1, e1 = 2
    Topology t{3, {{0, 1, 2.0}, {1, 2, 2.0}, {0, 2, 5.0}}, {0}, {2}};
    EXPECT_DOUBLE_EQ(shortest_path_delays(t)(0, 0), 4.0);
}

TEST(ShortestPaths, DisconnectedIsAnError) {
    Topology t{4, {{0, 1, 2.0}, {2, 3, 2.0}}, {0}, {3}};
    EXPECT_EQ(error_kind_of([&] { shortest_path_delays(t); }), ErrorKind::kValidation);
}

TEST(Generate, DefaultsMatchExperimentSetup) {
    const auto inst = generate_instance({.areas = 5, .ens = 3, .seed = 11});
    EXPECT_EQ(inst.m, 5u);
    EXPECT_EQ(inst.n, 3u);
    EXPECT_EQ(inst.demand.size(), 5u);
    EXPECT_EQ(inst.capacity.size(), 3u);
    EXPECT_DOUBLE_EQ(inst.budget, 20.0);
    EXPECT_DOUBLE_EQ(inst.delay_penalty, 1e-4);
    const std::set<double> ladder = {2, 4, 8, 16, 32, 48, 64, 96};
    for (double c : inst.capacity) EXPECT_TRUE(ladder.count(c));
    for (double h : inst.placement_cost) {
        EXPECT_GE(h, 0.2);
        EXPECT_LE(h, 0.25);
    }
    for (double l : inst.demand) {
        EXPECT_GE(l, 10.0);
        EXPECT_LE(l, 50.0);
    }
    for (double r : inst.unmet_penalty) EXPECT_DOUBLE_EQ(r, 0.1);
    EXPECT_NO_THROW(validate(inst));
}

TEST(Generate, ZeroAreasIsValid) {
    const auto inst = generate_instance({.areas = 0, .ens = 1, .seed = 3});
    EXPECT_EQ(inst.m, 0u);
    EXPECT_TRUE(inst.demand.empty());
    EXPECT_NO_THROW(validate(inst));
}

TEST(Generate, SameSeedIsByteIdentical) {
    const GenConfig cfg{.areas = 50, .ens = 3, .seed = 42};
    EXPECT_EQ(instance_to_json(generate_instance(cfg)), instance_to_json(generate_instance(cfg)));
    GenConfig other = cfg;
    other.seed = 43;
    EXPECT_NE(instance_to_json(generate_instance(cfg)), instance_to_json(generate_instance(other)));
}

TEST(Generate, TooManySitesForExplicitNodeCount) {
    GenConfig cfg{.areas = 48, .ens = 3, .seed = 1};
    cfg.node_count = 50;
    EXPECT_EQ(error_kind_of([&] { generate_instance(cfg); }), ErrorKind::kParameter);
    cfg.node_count.reset();
    EXPECT_NO_THROW(generate_instance(cfg));
}

TEST(Generate, EmbeddedTopologyReproducesDelays) {
    GenConfig cfg{.areas = 6, .ens = 3, .seed = 5};
    cfg.embed_topology = true;
    const auto inst = generate_instance(cfg);
    ASSERT_TRUE(inst.topology.has_value());
    EXPECT_EQ(shortest_path_delays(*inst.topology), inst.delay);
}

TEST(Restrict, IdentityAndProjection) {
    const auto full = generate_instance({.areas = 50, .ens = 3, .seed = 8});
    EXPECT_EQ(restrict_areas(full, 50), full);
    const auto small = restrict_areas(full, 5);
    EXPECT_EQ(small.m, 5u);
    EXPECT_EQ(small.capacity, full.capacity);
    EXPECT_EQ(small.placement_cost, full.placement_cost);
    EXPECT_EQ(small.budget, full.budget);
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_EQ(small.demand[i], full.demand[i]);
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(small.delay(i, j), full.delay(i, j));
    }
}

TEST(Restrict, RejectsZeroAndTooMany) {
    const auto inst = generate_instance({.areas = 5, .ens = 3, .seed = 8});
    EXPECT_EQ(error_kind_of([&] { restrict_areas(inst, 0); }), ErrorKind::kParameter);
    EXPECT_EQ(error_kind_of([&] { restrict_areas(inst, 6); }), ErrorKind::kParameter);
}

TEST(Serialization, RoundTrip) {
    GenConfig cfg{.areas = 5, .ens = 3, .seed = 17};
    const auto inst = generate_instance(cfg);
    EXPECT_EQ(instance_from_json(instance_to_json(inst)), inst);
    cfg.embed_topology = true;
    const auto with_graph = generate_instance(cfg);
    EXPECT_EQ(instance_from_json(instance_to_json(with_graph)), with_graph);

    const auto path = std::filesystem::temp_directory_path() / "qedge_roundtrip.json";
    save_instance(inst, path.string());
    EXPECT_EQ(load_instance(path.string()), inst);
    std::filesystem::remove(path);
}

TEST(Serialization, MissingBudgetNamesTheField) {
    auto doc = json::parse(instance_to_json(testing::toy1()));
    doc.erase("budget");
    try {
        instance_from_json(doc.dump());
        FAIL() << "expected parse error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::kParse);
        EXPECT_NE(std::string(e.what()).find("budget"), std::string::npos);
    }
}

TEST(Serialization, NegativeCapacityIsAValidationError) {
    auto doc = json::parse(instance_to_json(testing::toy1()));
    doc["capacity"][1] = -1.0;
    EXPECT_EQ(error_kind_of([&] { instance_from_json(doc.dump()); }), ErrorKind::kValidation);
}

TEST(Serialization, SyntaxErrorIsAParseError) {
    EXPECT_EQ(error_kind_of([] { instance_from_json("{\"m\": 2,"); }), ErrorKind::kParse);
}

TEST(Serialization, MissingFileIsAnIoError) {
    EXPECT_EQ(error_kind_of([] { load_instance("/nonexistent/qedge.json"); }), ErrorKind::kIo);
}

TEST(Validate, ShapeMismatch) {
    auto inst = testing::toy1();
    inst.demand.push_back(1.0);
    EXPECT_EQ(error_kind_of([&] { validate(inst); }), ErrorKind::kValidation);
}

}  // namespace
}  // namespace qedge
