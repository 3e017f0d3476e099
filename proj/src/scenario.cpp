#include "covnet/scenario.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "covnet/rng.hpp"

namespace covnet {

int env_side_for(int n_robots) {
    // area = 10000 * n / 20, i.e. 500 units^2 per robot
    return static_cast<int>(std::llround(std::sqrt(500.0 * n_robots)));
}

Scenario generate_scenario(int n_robots, const ScenarioParams& params,
                           std::uint64_t seed) {
    if (n_robots < 1) {
        throw std::invalid_argument("generate_scenario: need at least 1 robot");
    }
    if (!(params.target_density > 0.0 && params.target_density < 1.0)) {
        throw std::invalid_argument("generate_scenario: density must be in (0,1)");
    }

    const int side = env_side_for(n_robots);
    const std::int64_t cells = static_cast<std::int64_t>(side) * side;
    const std::int64_t n_targets =
        std::llround(params.target_density * static_cast<double>(cells));
    if (n_targets < 1) {
        throw std::invalid_argument("generate_scenario: density yields 0 targets");
    }

    Scenario s;
    s.params = params;
    s.env_side = static_cast<double>(side);
    s.seed = seed;

    Rng rng(seed);
    s.robots.reserve(n_robots);
    for (int i = 0; i < n_robots; ++i) {
        const double x = rng.uniform(s.env_side);
        const double y = rng.uniform(s.env_side);
        s.robots.push_back({x, y});
    }

    // Distinct cells, kept in draw order.
    std::unordered_set<std::int64_t> taken;
    taken.reserve(static_cast<size_t>(n_targets) * 2);
    s.targets.reserve(static_cast<size_t>(n_targets));
    while (static_cast<std::int64_t>(s.targets.size()) < n_targets) {
        const std::int64_t cell =
            static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(cells)));
        if (!taken.insert(cell).second) continue;
        const double cx = static_cast<double>(cell % side) + 0.5;
        const double cy = static_cast<double>(cell / side) + 0.5;
        s.targets.push_back({cx, cy});
    }
    return s;
}

} // namespace covnet
