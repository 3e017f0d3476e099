#ifndef COVNET_SELECTORS_HPP
#define COVNET_SELECTORS_HPP

#include <cstdint>

#include "covnet/world.hpp"

namespace covnet {

struct SelectionResult {
    Assignment assignment;
    int value = 0;            // objective of the assignment
    std::int64_t evaluations = 0; // objective/marginal evaluations performed
    double elapsed_us = 0.0;  // wall time of the selection call
};

enum class GreedyVariant {
    // Each round scans every unassigned (robot, primitive) pair and takes
    // the best marginal gain; ties go to the lowest robot id, then the
    // lowest primitive index.
    PairwiseGlobal,
    // Robots pick in fixed ascending-id order, each taking its best
    // primitive given the selections so far.
    SequentialFixedOrder,
};

// Centralized greedy, the expert. At most 5N^2 marginal evaluations for
// the pairwise variant.
SelectionResult greedy_central(const Scenario& s,
                               GreedyVariant variant = GreedyVariant::PairwiseGlobal);

// Each robot runs the fixed-order sequential greedy on the sub-problem of
// itself plus its 1-hop neighbors (only targets that subteam can cover)
// and keeps the action assigned to itself. elapsed_us is the maximum
// per-robot local run time; evaluations is the total across robots.
SelectionResult greedy_decentralized(const Scenario& s, const CommGraph& g);

inline constexpr std::int64_t kDefaultExhaustiveCap = 9765625; // 5^10

// Exact maximizer by full enumeration, ties broken lexicographically.
// Throws std::runtime_error("instance too large") if 5^N exceeds cap.
SelectionResult exhaustive_opt(const Scenario& s,
                               std::int64_t cap = kDefaultExhaustiveCap);

// Independent uniform primitive per robot.
SelectionResult random_assign(const Scenario& s, std::uint64_t seed);

} // namespace covnet

#endif // COVNET_SELECTORS_HPP
