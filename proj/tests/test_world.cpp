#include <doctest.h>

#include <stdexcept>

#include <set>

#include "covnet/rng.hpp"
#include "covnet/world.hpp"
#include "fixture.hpp"

using namespace covnet;

TEST_CASE("environment scales with team size") {
    const Scenario s20 = generate_scenario(20, ScenarioParams{}, 1);
    CHECK(s20.env_side == 100.0);
    CHECK(s20.n_targets() == 250);

    const Scenario s80 = generate_scenario(80, ScenarioParams{}, 1);
    CHECK(s80.env_side == 200.0);
    CHECK(s80.n_targets() == 1000);
}

TEST_CASE("generation is deterministic and in bounds") {
    const Scenario a = generate_scenario(12, ScenarioParams{}, 77);
    const Scenario b = generate_scenario(12, ScenarioParams{}, 77);
    CHECK(a.robots == b.robots);
    CHECK(a.targets == b.targets);

    const Scenario c = generate_scenario(12, ScenarioParams{}, 78);
    CHECK(a.robots != c.robots);

    for (const auto& p : a.robots) {
        CHECK(p.x >= 0.0);
        CHECK(p.x <= a.env_side);
        CHECK(p.y >= 0.0);
        CHECK(p.y <= a.env_side);
    }
    std::set<std::pair<double, double>> distinct;
    for (const auto& t : a.targets) {
        CHECK(t.x >= 0.0);
        CHECK(t.x <= a.env_side);
        distinct.insert({t.x, t.y});
    }
    CHECK(distinct.size() == a.targets.size()); // target cells distinct
}

TEST_CASE("generation rejects bad arguments") {
    CHECK_THROWS_AS(generate_scenario(0, ScenarioParams{}, 1), std::invalid_argument);

    ScenarioParams p;
    p.target_density = 1.5;
    CHECK_THROWS_AS(generate_scenario(4, p, 1), std::invalid_argument);

    p.target_density = 1e-9; // rounds to zero targets
    CHECK_THROWS_AS(generate_scenario(4, p, 1), std::invalid_argument);
}

TEST_CASE("coverage regions") {
    const ScenarioParams p;

    const Rect idle = coverage_region({0.0, 0.0}, MotionPrimitive::Idle, p);
    CHECK(idle.x_min == -3.0);
    CHECK(idle.x_max == 3.0);
    CHECK(idle.y_min == -3.0);
    CHECK(idle.y_max == 3.0);

    const Rect fwd = coverage_region({0.0, 0.0}, MotionPrimitive::Forward, p);
    CHECK(fwd.x_min == -3.0);
    CHECK(fwd.x_max == 3.0);
    CHECK(fwd.y_min == -3.0);
    CHECK(fwd.y_max == 23.0);

    const Rect left = coverage_region({10.0, 10.0}, MotionPrimitive::Left, p);
    CHECK(left.x_min == -13.0);
    CHECK(left.x_max == 13.0);
    CHECK(left.y_min == 7.0);
    CHECK(left.y_max == 13.0);
}

TEST_CASE("moving regions are travel+fov long and fov wide") {
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        ScenarioParams p;
        p.fov_side = 1.0 + rng.uniform(10.0);
        p.travel = rng.uniform(30.0);
        const Point2 pos{rng.uniform(100.0), rng.uniform(100.0)};
        for (MotionPrimitive m : {MotionPrimitive::Forward, MotionPrimitive::Backward,
                                  MotionPrimitive::Left, MotionPrimitive::Right}) {
            const Rect r = coverage_region(pos, m, p);
            const double dx = r.x_max - r.x_min;
            const double dy = r.y_max - r.y_min;
            const bool vertical = primitive_direction(m).x == 0.0;
            CHECK((vertical ? dy : dx) == doctest::Approx(p.travel + p.fov_side));
            CHECK((vertical ? dx : dy) == doctest::Approx(p.fov_side));
        }
    }
}

TEST_CASE("covered targets, boundary inclusive") {
    Scenario s = testing::overlap_fixture();

    CHECK(covered_targets(s, 0, MotionPrimitive::Forward) == std::vector<int>{2, 3});
    CHECK(covered_targets(s, 1, MotionPrimitive::Forward) == std::vector<int>{0, 1, 2});
    CHECK(covered_targets(s, 0, MotionPrimitive::Idle).empty());
    CHECK_THROWS_AS(covered_targets(s, 99, MotionPrimitive::Idle), std::invalid_argument);

    // target exactly on the forward region edge of robot 0: x = 53
    s.targets.push_back({53.0, 60.0});
    CHECK(covered_targets(s, 0, MotionPrimitive::Forward) == std::vector<int>{2, 3, 4});
}

TEST_CASE("objective counts distinct covered targets") {
    const Scenario s = testing::overlap_fixture();
    CHECK(objective(s, {0, 0, 0}) == 4); // forward/forward jointly cover all four
    CHECK(objective(s, {4, 4, 4}) == 0);

    Scenario empty;
    empty.env_side = 10.0;
    empty.targets = {{1.0, 1.0}};
    CHECK(objective(empty, {}) == 0);
    CHECK_THROWS_AS(objective(s, {0, 0}), std::invalid_argument); // one action per robot

    // two co-located robots with the same primitive still cover each target once
    Scenario dup;
    dup.env_side = 100.0;
    dup.robots = {{50.0, 50.0}, {50.0, 50.0}};
    dup.targets = {{50.0, 55.0}, {50.0, 60.0}, {50.0, 65.0}};
    CHECK(objective(dup, {0, 0}) == 3);
}

TEST_CASE("marginal gain") {
    const Scenario s = testing::overlap_fixture();

    PartialAssignment none(3, kUnassigned);
    CHECK(marginal_gain(s, none, 1, MotionPrimitive::Forward) == 3);

    PartialAssignment with0 = none;
    with0[0] = 0; // robot 0 forward covers {2,3}
    CHECK(marginal_gain(s, with0, 1, MotionPrimitive::Forward) == 2);
    CHECK_THROWS_AS(marginal_gain(s, with0, 0, MotionPrimitive::Idle), std::invalid_argument);

    // a primitive covering only already-covered targets adds nothing
    Scenario dup;
    dup.env_side = 100.0;
    dup.robots = {{50.0, 50.0}, {50.0, 50.0}};
    dup.targets = {{50.0, 55.0}};
    PartialAssignment partial{0, kUnassigned};
    CHECK(marginal_gain(dup, partial, 1, MotionPrimitive::Forward) == 0);
}

TEST_CASE("communication graph") {
    Scenario s;
    s.env_side = 100.0;
    s.params = ScenarioParams{};

    SUBCASE("boundary distance is connected") {
        s.robots = {{0.0, 0.0}, {10.0, 0.0}};
        const CommGraph g = build_comm_graph(s);
        CHECK(g.at(0, 1) == 1.0);
        CHECK(g.at(1, 0) == 1.0);
        CHECK(g.neighbors[0] == std::vector<int>{1});
    }

    SUBCASE("far robots stay disconnected") {
        s.robots = {{0.0, 0.0}, {50.0, 0.0}, {0.0, 50.0}};
        const CommGraph g = build_comm_graph(s);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) CHECK(g.at(i, j) == 0.0);
        }
    }

    SUBCASE("three on a line form a path") {
        s.robots = {{0.0, 0.0}, {10.0, 0.0}, {20.0, 0.0}};
        const CommGraph g = build_comm_graph(s);
        CHECK(g.neighbors[0] == std::vector<int>{1});
        CHECK(g.neighbors[1] == std::vector<int>{0, 2});
        CHECK(g.neighbors[2] == std::vector<int>{1});
    }

    SUBCASE("random instances: symmetric, zero diagonal") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const Scenario r = generate_scenario(15, ScenarioParams{}, seed);
            const CommGraph g = build_comm_graph(r);
            for (int i = 0; i < g.n; ++i) {
                CHECK(g.at(i, i) == 0.0);
                for (int j = 0; j < g.n; ++j) CHECK(g.at(i, j) == g.at(j, i));
            }
        }
    }
}

TEST_CASE("observations") {
    const Scenario s = testing::overlap_fixture();

    const Observation o0 = observe(s, 0);
    REQUIRE(o0.sensed_robots.size() == 2); // robots 1 and 2 are in sensing range
    CHECK(o0.sensed_robots[0].id == 1);
    CHECK(o0.sensed_robots[0].rel.x == -4.0);
    CHECK(o0.sensed_robots[0].rel.y == 5.0);
    CHECK(o0.sensed_robots[1].id == 2);
    REQUIRE(o0.coverable_targets.size() == 2);
    CHECK(o0.coverable_targets[0].id == 2);
    CHECK(o0.coverable_targets[1].id == 3);

    // robot 2 at distance ~20.5 from robot 1: outside sensing
    const Observation o1 = observe(s, 1);
    REQUIRE(o1.sensed_robots.size() == 1);
    CHECK(o1.sensed_robots[0].id == 0);

    SUBCASE("isolated robot sees nothing") {
        Scenario lone;
        lone.env_side = 100.0;
        lone.robots = {{50.0, 50.0}};
        const Observation o = observe(lone, 0);
        CHECK(o.sensed_robots.empty());
        CHECK(o.coverable_targets.empty());
    }

    SUBCASE("sensing boundary is inclusive") {
        Scenario pair;
        pair.env_side = 100.0;
        pair.robots = {{0.0, 0.0}, {20.0, 0.0}};
        const Observation o = observe(pair, 0);
        REQUIRE(o.sensed_robots.size() == 1);
        CHECK(o.sensed_robots[0].id == 1);
    }
}

TEST_CASE("coverage sets match the naive objective") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Scenario s = generate_scenario(6, ScenarioParams{}, seed);
        const CoverageSets sets(s);
        Rng rng(seed);
        Assignment u(6);
        for (auto& a : u) a = static_cast<int>(rng.uniform_below(kNumPrimitives));

        auto cover = sets.empty_cover();
        for (int i = 0; i < 6; ++i) sets.merge(cover.data(), i, u[i]);
        int bits = 0;
        for (auto w : cover) bits += std::popcount(w);
        CHECK(bits == objective(s, u));
    }
}
