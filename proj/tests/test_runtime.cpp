#include <doctest.h>

#include <stdexcept>

#include <sstream>

#include "covnet/runtime.hpp"
#include "covnet/verify.hpp"
#include "fixture.hpp"

using namespace covnet;

TEST_CASE("edgeless team sends nothing and matches the zero-operator forward") {
    Scenario s;
    s.env_side = 200.0;
    s.params = ScenarioParams{};
    s.robots = {{20.0, 20.0}, {100.0, 100.0}, {180.0, 40.0}};
    s.targets = {{20.0, 28.0}, {98.0, 92.0}};
    const CommGraph g = build_comm_graph(s);
    const Model<double> model = init_model<double>(ModelConfig{}, 8);

    const auto res = run_decentralized_inference(s, g, model);
    CHECK(res.stats.messages == 0);
    CHECK(res.stats.payload_values == 0);
    CHECK(res.stats.rounds == 2); // L*K rounds happen even with nothing to say

    const Matrix<double> x = encode_all<double>(s);
    const Matrix<double> zero(3, 3);
    const Matrix<double> central = gnn_forward(zero, x, model);
    CHECK(res.assignment == logits_to_assignment(central));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 5; ++j) {
            CHECK(res.logits(i, j) == doctest::Approx(central(i, j)).epsilon(1e-12));
        }
    }
}

TEST_CASE("three-robot path: 2 rounds, 8 directed payloads") {
    Scenario s;
    s.env_side = 100.0;
    s.params = ScenarioParams{};
    s.robots = {{10.0, 50.0}, {19.0, 50.0}, {28.0, 50.0}};
    s.targets = {{12.0, 55.0}, {26.0, 45.0}};
    const CommGraph g = build_comm_graph(s);
    REQUIRE(g.neighbors[1].size() == 2);

    const Model<double> model = init_model<double>(ModelConfig{}, 4);
    std::ostringstream trace;
    const auto res = run_decentralized_inference(s, g, model, &trace);
    CHECK(res.stats.rounds == 2);
    CHECK(res.stats.messages == 8);
    // layer inputs are 8 then 32 wide
    CHECK(res.stats.payload_values == 4 * 8 + 4 * 32);

    int lines = 0;
    std::string line;
    std::istringstream in(trace.str());
    while (std::getline(in, line)) ++lines;
    CHECK(lines == res.stats.messages);
}

TEST_CASE("protocol matches the centralized forward on random instances") {
    const CheckResult r = check_decentralized_parity(25, 99);
    INFO(r.detail);
    CHECK(r.pass);
}

TEST_CASE("payload from a non-neighbor is a protocol violation") {
    RobotNode<double> node;
    node.id = 3;
    node.neighbors = {1, 5};
    CHECK_THROWS_WITH_AS(node.deliver({2, {1.0, 2.0}}),
                         "protocol violation: payload from non-neighbor",
                         std::runtime_error);
    node.deliver({5, {1.0, 2.0}});
    CHECK_THROWS_AS(node.drain_inbox(3), std::runtime_error); // width mismatch
}

TEST_CASE("per-robot compute times are populated") {
    const Scenario s = testing::overlap_fixture();
    const CommGraph g = build_comm_graph(s);
    const Model<float> model = init_model<float>(ModelConfig{}, 2);
    const auto res = run_decentralized_inference(s, g, model);
    REQUIRE(res.node_us.size() == 3);
    for (double t : res.node_us) {
        CHECK(t > 0.0);
        CHECK(t <= res.max_node_us);
    }
}
