#ifndef COVNET_SCENARIO_HPP
#define COVNET_SCENARIO_HPP

#include <cstdint>
#include <vector>

#include "covnet/geometry.hpp"

namespace covnet {

// Physical constants of one tracking setup. Defaults follow the reference
// configuration: sensing 20, comms 10, 6x6 field of view, travel 20,
// 2.5% of grid cells occupied by targets.
struct ScenarioParams {
    double sensing_range = 20.0;
    double comm_range = 10.0;
    double fov_side = 6.0;
    double travel = 20.0;
    double target_density = 0.025;

    friend bool operator==(const ScenarioParams&, const ScenarioParams&) = default;
};

// One snapshot: robot positions, target positions (cell centers), bounds.
struct Scenario {
    ScenarioParams params;
    double env_side = 0.0;
    std::vector<Point2> robots;
    std::vector<Point2> targets;
    std::uint64_t seed = 0;

    int n_robots() const { return static_cast<int>(robots.size()); }
    int n_targets() const { return static_cast<int>(targets.size()); }
};

// Environment side for a team size: area grows linearly with the team,
// anchored at 100x100 for 20 robots, rounded to whole units (1x1 cells).
int env_side_for(int n_robots);

// Random instance: robots uniform in the square, targets at distinct
// uniformly chosen cell centers, count = round(density * cells).
// Bit-identical output for identical (n_robots, params, seed).
// Throws std::invalid_argument for n_robots < 1, density outside (0,1),
// or a density that rounds to zero targets.
Scenario generate_scenario(int n_robots, const ScenarioParams& params,
                           std::uint64_t seed);

} // namespace covnet

#endif // COVNET_SCENARIO_HPP
