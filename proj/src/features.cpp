#include "covnet/features.hpp"

#include <algorithm>
#include <cmath>

namespace covnet {

namespace {

// Flatten the `cap` nearest entries as (dx, dy) pairs starting at `out`,
// padding the remainder of the block.
void fill_block(const std::vector<Observation::Entry>& entries, int cap,
                double* out) {
    std::vector<std::pair<double, int>> order; // (distance, index into entries)
    order.reserve(entries.size());
    for (size_t k = 0; k < entries.size(); ++k) {
        const auto& e = entries[k];
        order.emplace_back(std::hypot(e.rel.x, e.rel.y), static_cast<int>(k));
    }
    std::sort(order.begin(), order.end(),
              [&](const auto& a, const auto& b) {
                  if (a.first != b.first) return a.first < b.first;
                  return entries[a.second].id < entries[b.second].id;
              });

    const int take = std::min<int>(cap, static_cast<int>(order.size()));
    for (int k = 0; k < take; ++k) {
        const auto& e = entries[order[k].second];
        out[2 * k] = e.rel.x;
        out[2 * k + 1] = e.rel.y;
    }
    for (int k = 2 * take; k < 2 * cap; ++k) out[k] = kPadValue;
}

} // namespace

FeatureVector encode(const Observation& obs) {
    FeatureVector f;
    fill_block(obs.sensed_robots, kNearestRobots, f.data());
    fill_block(obs.coverable_targets, kNearestTargets,
               f.data() + 2 * kNearestRobots);
    return f;
}

} // namespace covnet
