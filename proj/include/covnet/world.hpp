#ifndef COVNET_WORLD_HPP
#define COVNET_WORLD_HPP

#include <cstdint>
#include <vector>

#include "covnet/geometry.hpp"
#include "covnet/scenario.hpp"

namespace covnet {

// One primitive index per robot, in robot-id order.
using Assignment = std::vector<int>;

// Partial assignment used by the greedy selectors: -1 = not yet assigned.
using PartialAssignment = std::vector<int>;
inline constexpr int kUnassigned = -1;

// Distance-based communication graph. adjacency is the 0/1 graph shift
// operator; neighbor lists are ascending. Edge weights default to 1 and
// live in the adjacency matrix itself (weighted graphs would scale its
// entries).
struct CommGraph {
    int n = 0;
    std::vector<double> adjacency; // row-major n*n
    std::vector<std::vector<int>> neighbors;

    double at(int i, int j) const { return adjacency[static_cast<size_t>(i) * n + j]; }
};

// What one robot perceives: relative positions of robots in sensing range
// and of every target at least one of its primitives can cover.
struct Observation {
    struct Entry {
        int id;
        Point2 rel;
    };
    int robot = -1;
    std::vector<Entry> sensed_robots;    // id order
    std::vector<Entry> coverable_targets; // id order; ids form T_i
};

// Swept tracking region of a primitive: the fov_side square translated
// `travel` units along the primitive direction (length travel+fov along
// the motion axis, width fov across; Idle degenerates to the square).
Rect coverage_region(const Point2& pos, MotionPrimitive m,
                     const ScenarioParams& params);

// Ids of targets inside coverage_region, ascending. Throws on bad robot id.
std::vector<int> covered_targets(const Scenario& s, int robot,
                                 MotionPrimitive m);

// Team objective: number of distinct targets covered by the assignment.
int objective(const Scenario& s, const Assignment& u);

// objective(partial + (robot,m)) - objective(partial). Throws if the robot
// already holds an action in `partial`.
int marginal_gain(const Scenario& s, const PartialAssignment& partial,
                  int robot, MotionPrimitive m);

// 0/1 adjacency by the comm-range rule (closed ball), zero diagonal.
CommGraph build_comm_graph(const Scenario& s);

Observation observe(const Scenario& s, int robot);

// Per-(robot,primitive) covered-target bitsets, precomputed once per
// scenario. This is what the selectors iterate over; a marginal gain is
// one OR + popcount pass.
class CoverageSets {
public:
    explicit CoverageSets(const Scenario& s);

    // Restricted variant: only `robots` participate and only targets in
    // `target_ids` are visible (used by the decentralized greedy to build
    // 1-hop sub-problems). Bit k refers to target_ids[k].
    CoverageSets(const Scenario& s, const std::vector<int>& robots,
                 const std::vector<int>& target_ids);

    int n_robots() const { return n_robots_; }
    int words() const { return words_; }

    const std::uint64_t* set(int robot, int primitive) const {
        return sets_.data() + (static_cast<size_t>(robot) * kNumPrimitives + primitive) * words_;
    }

    // popcount(cover | set(robot, primitive)) - popcount(cover)
    int gain(const std::uint64_t* cover, int robot, int primitive) const;

    // cover |= set(robot, primitive)
    void merge(std::uint64_t* cover, int robot, int primitive) const;

    std::vector<std::uint64_t> empty_cover() const {
        return std::vector<std::uint64_t>(words_, 0);
    }

private:
    int n_robots_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> sets_;
};

} // namespace covnet

#endif // COVNET_WORLD_HPP
