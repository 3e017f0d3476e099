#include "covnet/selectors.hpp"

#include <bit>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "covnet/rng.hpp"

namespace covnet {

namespace {

using Clock = std::chrono::steady_clock;

double us_since(Clock::time_point start) {
    return std::chrono::duration<double, std::micro>(Clock::now() - start).count();
}

int popcount_words(const std::uint64_t* w, int words) {
    int c = 0;
    for (int k = 0; k < words; ++k) c += std::popcount(w[k]);
    return c;
}

// Sequential greedy over `order`, marginal gains against `cover`.
// Returns picks in order positions; accumulates evaluation count.
std::vector<int> sequential_greedy(const CoverageSets& sets,
                                   const std::vector<int>& order,
                                   std::int64_t& evaluations) {
    std::vector<std::uint64_t> cover(static_cast<size_t>(sets.words()), 0);
    std::vector<int> picks(order.size(), 0);
    for (size_t pos = 0; pos < order.size(); ++pos) {
        const int robot = order[pos];
        int best_gain = -1;
        int best_m = 0;
        for (int m = 0; m < kNumPrimitives; ++m) {
            const int g = sets.gain(cover.data(), robot, m);
            ++evaluations;
            if (g > best_gain) {
                best_gain = g;
                best_m = m;
            }
        }
        picks[pos] = best_m;
        sets.merge(cover.data(), robot, best_m);
    }
    return picks;
}

} // namespace

SelectionResult greedy_central(const Scenario& s, GreedyVariant variant) {
    const auto start = Clock::now();
    const int n = s.n_robots();
    const CoverageSets sets(s);

    SelectionResult res;
    res.assignment.assign(n, 0);

    auto cover = sets.empty_cover();
    if (variant == GreedyVariant::SequentialFixedOrder) {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        const auto picks = sequential_greedy(sets, order, res.evaluations);
        res.assignment = picks;
        for (int i = 0; i < n; ++i) sets.merge(cover.data(), i, picks[i]);
    } else {
        std::vector<bool> assigned(n, false);
        for (int round = 0; round < n; ++round) {
            int best_gain = -1, best_robot = 0, best_m = 0;
            for (int i = 0; i < n; ++i) {
                if (assigned[i]) continue;
                for (int m = 0; m < kNumPrimitives; ++m) {
                    const int g = sets.gain(cover.data(), i, m);
                    ++res.evaluations;
                    if (g > best_gain) {
                        best_gain = g;
                        best_robot = i;
                        best_m = m;
                    }
                }
            }
            assigned[best_robot] = true;
            res.assignment[best_robot] = best_m;
            sets.merge(cover.data(), best_robot, best_m);
        }
    }
    res.value = popcount_words(cover.data(), sets.words());
    res.elapsed_us = us_since(start);
    return res;
}

SelectionResult greedy_decentralized(const Scenario& s, const CommGraph& g) {
    const int n = s.n_robots();
    SelectionResult res;
    res.assignment.assign(n, 0);

    double max_local_us = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto start = Clock::now();

        // subteam = {i} + 1-hop neighbors, ascending id
        std::vector<int> subteam;
        subteam.reserve(g.neighbors[i].size() + 1);
        for (int j : g.neighbors[i]) {
            if (j < i) subteam.push_back(j);
        }
        subteam.push_back(i);
        for (int j : g.neighbors[i]) {
            if (j > i) subteam.push_back(j);
        }

        // targets coverable by the subteam; nothing farther is visible
        std::vector<bool> coverable(s.targets.size(), false);
        for (int j : subteam) {
            for (MotionPrimitive m : all_primitives()) {
                const Rect region = coverage_region(s.robots[j], m, s.params);
                for (int t = 0; t < s.n_targets(); ++t) {
                    if (region.contains(s.targets[t])) coverable[t] = true;
                }
            }
        }
        std::vector<int> local_targets;
        for (int t = 0; t < s.n_targets(); ++t) {
            if (coverable[t]) local_targets.push_back(t);
        }

        const CoverageSets local(s, subteam, local_targets);
        std::vector<int> order(subteam.size());
        std::iota(order.begin(), order.end(), 0);
        const auto picks = sequential_greedy(local, order, res.evaluations);
        for (size_t pos = 0; pos < subteam.size(); ++pos) {
            if (subteam[pos] == i) res.assignment[i] = picks[pos];
        }

        max_local_us = std::max(max_local_us, us_since(start));
    }
    res.value = objective(s, res.assignment);
    res.elapsed_us = max_local_us;
    return res;
}

SelectionResult exhaustive_opt(const Scenario& s, std::int64_t cap) {
    const int n = s.n_robots();

    std::int64_t space = 1;
    bool too_large = false;
    for (int i = 0; i < n; ++i) {
        if (space > cap / kNumPrimitives) {
            too_large = true;
            break;
        }
        space *= kNumPrimitives;
    }
    if (too_large || space > cap) {
        throw std::runtime_error("exhaustive_opt: instance too large");
    }

    const auto start = Clock::now();
    const CoverageSets sets(s);
    const int words = sets.words();

    SelectionResult res;
    res.assignment.assign(n, 0);

    // Depth-first odometer over assignments in lexicographic order with an
    // incremental cover union per level; keeps the first (lexicographically
    // smallest) maximizer.
    std::vector<std::uint64_t> stack(static_cast<size_t>(n + 1) * words, 0);
    std::vector<int> current(n, 0);
    int best_value = -1;
    Assignment best(n, 0);

    int depth = 0;
    current[0] = -1;
    while (depth >= 0) {
        if (++current[depth] >= kNumPrimitives) {
            --depth;
            continue;
        }
        const std::uint64_t* parent = stack.data() + static_cast<size_t>(depth) * words;
        std::uint64_t* node = stack.data() + static_cast<size_t>(depth + 1) * words;
        const std::uint64_t* cand = sets.set(depth, current[depth]);
        for (int k = 0; k < words; ++k) node[k] = parent[k] | cand[k];
        if (depth + 1 == n) {
            ++res.evaluations;
            const int v = popcount_words(node, words);
            if (v > best_value) {
                best_value = v;
                best = current;
            }
        } else {
            ++depth;
            current[depth] = -1;
        }
    }

    res.assignment = best;
    res.value = best_value;
    res.elapsed_us = us_since(start);
    return res;
}

SelectionResult random_assign(const Scenario& s, std::uint64_t seed) {
    const auto start = Clock::now();
    const int n = s.n_robots();
    Rng rng(seed);
    SelectionResult res;
    res.assignment.resize(n);
    for (int i = 0; i < n; ++i) {
        res.assignment[i] = static_cast<int>(rng.uniform_below(kNumPrimitives));
    }
    res.elapsed_us = us_since(start);
    res.value = objective(s, res.assignment);
    res.evaluations = 0;
    return res;
}

} // namespace covnet
