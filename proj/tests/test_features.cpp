#include <doctest.h>

#include "covnet/features.hpp"
#include "fixture.hpp"

using namespace covnet;

TEST_CASE("empty observation encodes to all padding") {
    Observation obs;
    obs.robot = 0;
    const FeatureVector f = encode(obs);
    for (double v : f) CHECK(v == kPadValue);
}

TEST_CASE("padding follows the real entries") {
    Observation obs;
    obs.robot = 0;
    obs.sensed_robots = {{1, {1.0, 0.0}}, {2, {0.0, 2.0}}, {3, {3.0, 0.0}}};
    const FeatureVector f = encode(obs);
    // nearest first: (1,0), (0,2), (3,0)
    CHECK(f[0] == 1.0);
    CHECK(f[1] == 0.0);
    CHECK(f[2] == 0.0);
    CHECK(f[3] == 2.0);
    CHECK(f[4] == 3.0);
    CHECK(f[5] == 0.0);
    for (int i = 6; i < kFeatureWidth; ++i) CHECK(f[i] == kPadValue);
}

TEST_CASE("distance ties break by id") {
    Observation obs;
    obs.robot = 0;
    obs.sensed_robots = {{7, {0.0, 2.0}}, {3, {2.0, 0.0}}};
    const FeatureVector f = encode(obs);
    CHECK(f[0] == 2.0); // id 3 first
    CHECK(f[1] == 0.0);
    CHECK(f[2] == 0.0);
    CHECK(f[3] == 2.0);
}

TEST_CASE("only the nearest ten robots and twenty targets survive") {
    Observation obs;
    obs.robot = 0;
    for (int i = 0; i < 15; ++i) {
        obs.sensed_robots.push_back({i + 1, {static_cast<double>(i + 1), 0.0}});
    }
    for (int i = 0; i < 25; ++i) {
        obs.coverable_targets.push_back({i, {0.0, static_cast<double>(i + 1)}});
    }
    const FeatureVector f = encode(obs);
    for (int k = 0; k < kNearestRobots; ++k) {
        CHECK(f[2 * k] == static_cast<double>(k + 1));
    }
    for (int k = 0; k < kNearestTargets; ++k) {
        CHECK(f[2 * kNearestRobots + 2 * k + 1] == static_cast<double>(k + 1));
    }
}

TEST_CASE("fixture encoding: rows hold the expected relative positions") {
    const Scenario s = testing::overlap_fixture();
    const Matrix<double> x = encode_all<double>(s);
    REQUIRE(x.rows() == 3);
    REQUIRE(x.cols() == kFeatureWidth);

    // robot 0 senses robot 1 (closer) then robot 2
    CHECK(x(0, 0) == -4.0);
    CHECK(x(0, 1) == 5.0);
    CHECK(x(0, 2) == 10.0);
    CHECK(x(0, 3) == -10.0);
    CHECK(x(0, 4) == kPadValue);
    // camera block: target 2 at (-2,10) nearer than target 3 at (2,20)
    CHECK(x(0, 20) == -2.0);
    CHECK(x(0, 21) == 10.0);
    CHECK(x(0, 22) == 2.0);
    CHECK(x(0, 23) == 20.0);
    CHECK(x(0, 24) == kPadValue);
}

TEST_CASE("width is independent of team and target count") {
    const Scenario small = generate_scenario(1, ScenarioParams{}, 3);
    const Scenario large = generate_scenario(60, ScenarioParams{}, 3);
    CHECK(encode_all<float>(small).cols() == kFeatureWidth);
    CHECK(encode_all<float>(large).cols() == kFeatureWidth);
    CHECK(encode_all<float>(small).rows() == 1);
    CHECK(encode_all<float>(large).rows() == 60);
}

TEST_CASE("encoding is translation invariant") {
    const Scenario s = generate_scenario(10, ScenarioParams{}, 8);
    Scenario moved = s;
    for (auto& p : moved.robots) {
        p.x += 13.25;
        p.y -= 7.5;
    }
    for (auto& t : moved.targets) {
        t.x += 13.25;
        t.y -= 7.5;
    }
    moved.env_side += 100.0; // keep everything notionally in bounds
    const Matrix<double> a = encode_all<double>(s);
    const Matrix<double> b = encode_all<double>(moved);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            CHECK(a(i, j) == doctest::Approx(b(i, j)).epsilon(1e-12));
        }
    }
}

TEST_CASE("relabeling robots permutes rows identically") {
    const Scenario s = testing::overlap_fixture();
    Scenario swapped = s;
    std::swap(swapped.robots[0], swapped.robots[1]);
    const Matrix<double> a = encode_all<double>(s);
    const Matrix<double> b = encode_all<double>(swapped);
    for (int j = 0; j < a.cols(); ++j) {
        CHECK(a(0, j) == b(1, j));
        CHECK(a(1, j) == b(0, j));
        CHECK(a(2, j) == b(2, j));
    }
}
