#ifndef COVNET_RNG_HPP
#define COVNET_RNG_HPP

#include <cstdint>
#include <random>

namespace covnet {

// splitmix64 finalizer evaluated at counter position `index` of a stream
// keyed by `key`. Stateless, so per-instance seeds can be derived in any
// order and in parallel.
inline std::uint64_t mix_seed(std::uint64_t key, std::uint64_t index) {
    std::uint64_t z = key + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// mt19937_64 with explicit output mappings. The engine itself is fully
// specified by the standard; std::uniform_*_distribution is not, so the
// mappings below are spelled out to keep streams identical across
// standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // double in [0, 1), 53 random bits
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // double in [0, hi)
    double uniform(double hi) { return uniform() * hi; }

    // unbiased integer in [0, n)
    std::uint64_t uniform_below(std::uint64_t n) {
        std::uint64_t x, r;
        do {
            x = next_u64();
            r = x % n;
        } while (x - r > static_cast<std::uint64_t>(-n));
        return r;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace covnet

#endif // COVNET_RNG_HPP
