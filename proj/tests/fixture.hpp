#ifndef COVNET_TESTS_FIXTURE_HPP
#define COVNET_TESTS_FIXTURE_HPP

#include "covnet/scenario.hpp"

namespace covnet::testing {

// Hand-built 3-robot layout with verified geometry:
//   robot 0 at (50,50): forward covers targets {2,3}, everything else none
//   robot 1 at (46,55): forward covers targets {0,1,2}, everything else none
//   robot 2 at (60,40): covers nothing; sensed by robot 0 only
// Robots 0 and 1 are within comm range of each other; robot 2 is isolated.
// Joint forward/forward coverage is 4 distinct targets.
inline Scenario overlap_fixture(bool with_third_robot = true) {
    Scenario s;
    s.params = ScenarioParams{};
    s.env_side = 100.0;
    s.seed = 0;
    s.robots = {{50.0, 50.0}, {46.0, 55.0}};
    if (with_third_robot) s.robots.push_back({60.0, 40.0});
    s.targets = {{44.0, 65.0}, {45.0, 75.0}, {48.0, 60.0}, {52.0, 70.0}};
    return s;
}

} // namespace covnet::testing

#endif // COVNET_TESTS_FIXTURE_HPP
