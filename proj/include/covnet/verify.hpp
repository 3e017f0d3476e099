#ifndef COVNET_VERIFY_HPP
#define COVNET_VERIFY_HPP

#include <cstdint>
#include <string>

namespace covnet {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Greedy vs exhaustive search on instances with N in {2,3,4}: the 1/2
// bound must hold on every instance and the mean ratio must be >= 0.9.
CheckResult check_greedy_bound(int instances, std::uint64_t seed);

// Monotonicity and diminishing returns of the coverage objective:
// exhaustive over all partial assignments for N <= 3 plus randomized
// chains at N <= 10. Zero violations allowed.
CheckResult check_submodularity(int exhaustive_instances, int random_instances,
                                std::uint64_t seed);

// Analytic vs central-difference gradients (double precision) on random
// model/instance pairs; max relative error < 1e-4 per pair.
CheckResult check_gradients(int pairs, std::uint64_t seed);

// Permutation equivariance (<= 1e-9 abs, double precision) and exact
// L*K-hop locality of the forward pass.
CheckResult check_gnn_structure(int instances, std::uint64_t seed);

// Message-passing inference against the centralized forward pass:
// logits within 1e-6 abs, identical assignments, and exact agreement of
// the message/round counters with their closed forms.
CheckResult check_decentralized_parity(int instances, std::uint64_t seed);

} // namespace covnet

#endif // COVNET_VERIFY_HPP
