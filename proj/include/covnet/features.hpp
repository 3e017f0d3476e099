#ifndef COVNET_FEATURES_HPP
#define COVNET_FEATURES_HPP

#include <array>

#include "covnet/matrix.hpp"
#include "covnet/world.hpp"

namespace covnet {

// Fixed-width observation encoding: 10 nearest sensed robots then 20
// nearest coverable targets, each as (dx, dy), padded with -1. The width
// never depends on team or target count.
inline constexpr int kNearestRobots = 10;
inline constexpr int kNearestTargets = 20;
inline constexpr int kFeatureWidth = 2 * (kNearestRobots + kNearestTargets);
inline constexpr double kPadValue = -1.0;

using FeatureVector = std::array<double, kFeatureWidth>;

// Entries sorted by ascending distance (ties by id); surplus dropped,
// shortfall padded.
FeatureVector encode(const Observation& obs);

// Row i = encode(observe(s, i)).
template <typename T>
Matrix<T> encode_all(const Scenario& s) {
    Matrix<T> x(s.n_robots(), kFeatureWidth);
    for (int i = 0; i < s.n_robots(); ++i) {
        const FeatureVector f = encode(observe(s, i));
        for (int j = 0; j < kFeatureWidth; ++j) x(i, j) = static_cast<T>(f[j]);
    }
    return x;
}

} // namespace covnet

#endif // COVNET_FEATURES_HPP
