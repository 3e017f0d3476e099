#include "covnet/world.hpp"

#include <bit>
#include <stdexcept>

namespace covnet {

namespace {

void check_robot_id(const Scenario& s, int robot) {
    if (robot < 0 || robot >= s.n_robots()) {
        throw std::invalid_argument("invalid robot id");
    }
}

} // namespace

Rect coverage_region(const Point2& pos, MotionPrimitive m,
                     const ScenarioParams& params) {
    const Point2 dir = primitive_direction(m);
    const double travel = (m == MotionPrimitive::Idle) ? 0.0 : params.travel;
    const double half = params.fov_side / 2.0;
    // fov square swept `travel` units along dir
    const double x_lo = pos.x - half + std::min(0.0, dir.x * travel);
    const double x_hi = pos.x + half + std::max(0.0, dir.x * travel);
    const double y_lo = pos.y - half + std::min(0.0, dir.y * travel);
    const double y_hi = pos.y + half + std::max(0.0, dir.y * travel);
    return Rect{x_lo, x_hi, y_lo, y_hi};
}

std::vector<int> covered_targets(const Scenario& s, int robot,
                                 MotionPrimitive m) {
    check_robot_id(s, robot);
    const Rect region = coverage_region(s.robots[robot], m, s.params);
    std::vector<int> ids;
    for (int t = 0; t < s.n_targets(); ++t) {
        if (region.contains(s.targets[t])) ids.push_back(t);
    }
    return ids;
}

int objective(const Scenario& s, const Assignment& u) {
    if (static_cast<int>(u.size()) != s.n_robots()) {
        throw std::invalid_argument("objective: one primitive per robot required");
    }
    std::vector<bool> covered(s.targets.size(), false);
    int count = 0;
    for (int i = 0; i < s.n_robots(); ++i) {
        const auto m = static_cast<MotionPrimitive>(u[i]);
        const Rect region = coverage_region(s.robots[i], m, s.params);
        for (int t = 0; t < s.n_targets(); ++t) {
            if (!covered[t] && region.contains(s.targets[t])) {
                covered[t] = true;
                ++count;
            }
        }
    }
    return count;
}

int marginal_gain(const Scenario& s, const PartialAssignment& partial,
                  int robot, MotionPrimitive m) {
    check_robot_id(s, robot);
    if (partial[robot] != kUnassigned) {
        throw std::invalid_argument("marginal_gain: robot already assigned");
    }
    std::vector<bool> covered(s.targets.size(), false);
    for (int i = 0; i < s.n_robots(); ++i) {
        if (partial[i] == kUnassigned) continue;
        const Rect region =
            coverage_region(s.robots[i], static_cast<MotionPrimitive>(partial[i]), s.params);
        for (int t = 0; t < s.n_targets(); ++t) {
            if (region.contains(s.targets[t])) covered[t] = true;
        }
    }
    int gain = 0;
    const Rect region = coverage_region(s.robots[robot], m, s.params);
    for (int t = 0; t < s.n_targets(); ++t) {
        if (!covered[t] && region.contains(s.targets[t])) ++gain;
    }
    return gain;
}

CommGraph build_comm_graph(const Scenario& s) {
    const int n = s.n_robots();
    CommGraph g;
    g.n = n;
    g.adjacency.assign(static_cast<size_t>(n) * n, 0.0);
    g.neighbors.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (distance(s.robots[i], s.robots[j]) <= s.params.comm_range) {
                g.adjacency[static_cast<size_t>(i) * n + j] = 1.0;
                g.adjacency[static_cast<size_t>(j) * n + i] = 1.0;
                g.neighbors[i].push_back(j);
                g.neighbors[j].push_back(i);
            }
        }
    }
    return g;
}

Observation observe(const Scenario& s, int robot) {
    check_robot_id(s, robot);
    const Point2 p = s.robots[robot];

    Observation obs;
    obs.robot = robot;
    for (int j = 0; j < s.n_robots(); ++j) {
        if (j == robot) continue;
        if (distance(p, s.robots[j]) <= s.params.sensing_range) {
            obs.sensed_robots.push_back({j, {s.robots[j].x - p.x, s.robots[j].y - p.y}});
        }
    }

    // T_i: union of covered targets over the five primitives
    std::vector<bool> coverable(s.targets.size(), false);
    for (MotionPrimitive m : all_primitives()) {
        const Rect region = coverage_region(p, m, s.params);
        for (int t = 0; t < s.n_targets(); ++t) {
            if (region.contains(s.targets[t])) coverable[t] = true;
        }
    }
    for (int t = 0; t < s.n_targets(); ++t) {
        if (coverable[t]) {
            obs.coverable_targets.push_back({t, {s.targets[t].x - p.x, s.targets[t].y - p.y}});
        }
    }
    return obs;
}

CoverageSets::CoverageSets(const Scenario& s)
    : n_robots_(s.n_robots()), words_((s.n_targets() + 63) / 64) {
    if (words_ == 0) words_ = 1;
    sets_.assign(static_cast<size_t>(n_robots_) * kNumPrimitives * words_, 0);
    for (int i = 0; i < n_robots_; ++i) {
        for (int m = 0; m < kNumPrimitives; ++m) {
            const Rect region =
                coverage_region(s.robots[i], static_cast<MotionPrimitive>(m), s.params);
            std::uint64_t* w =
                sets_.data() + (static_cast<size_t>(i) * kNumPrimitives + m) * words_;
            for (int t = 0; t < s.n_targets(); ++t) {
                if (region.contains(s.targets[t])) {
                    w[t >> 6] |= std::uint64_t{1} << (t & 63);
                }
            }
        }
    }
}

CoverageSets::CoverageSets(const Scenario& s, const std::vector<int>& robots,
                           const std::vector<int>& target_ids)
    : n_robots_(static_cast<int>(robots.size())),
      words_((static_cast<int>(target_ids.size()) + 63) / 64) {
    if (words_ == 0) words_ = 1;
    sets_.assign(static_cast<size_t>(n_robots_) * kNumPrimitives * words_, 0);
    for (int ri = 0; ri < n_robots_; ++ri) {
        for (int m = 0; m < kNumPrimitives; ++m) {
            const Rect region = coverage_region(
                s.robots[robots[ri]], static_cast<MotionPrimitive>(m), s.params);
            std::uint64_t* w =
                sets_.data() + (static_cast<size_t>(ri) * kNumPrimitives + m) * words_;
            for (size_t k = 0; k < target_ids.size(); ++k) {
                if (region.contains(s.targets[target_ids[k]])) {
                    w[k >> 6] |= std::uint64_t{1} << (k & 63);
                }
            }
        }
    }
}

int CoverageSets::gain(const std::uint64_t* cover, int robot, int primitive) const {
    const std::uint64_t* w = set(robot, primitive);
    int g = 0;
    for (int k = 0; k < words_; ++k) {
        g += std::popcount(w[k] & ~cover[k]);
    }
    return g;
}

void CoverageSets::merge(std::uint64_t* cover, int robot, int primitive) const {
    const std::uint64_t* w = set(robot, primitive);
    for (int k = 0; k < words_; ++k) cover[k] |= w[k];
}

} // namespace covnet
