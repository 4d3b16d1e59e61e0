#ifndef AKUCB_RNG_HPP
#define AKUCB_RNG_HPP

#include <cassert>
#include <cstdint>

namespace akucb {

// Stafford mix13 finalizer, also the output stage of splitmix64.
inline uint64_t hash64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Stream derivation: every random stream in a run is opened from
// (master seed, key...) with this chain, so streams can be created in any
// order (or in parallel) and still produce identical draws.
inline uint64_t derive_seed(uint64_t base, uint64_t key) {
    return hash64(base + 0x9e3779b97f4a7c15ull * (key + 0x632be59bd9b4e019ull));
}
inline uint64_t derive_seed(uint64_t base, uint64_t k1, uint64_t k2) {
    return derive_seed(derive_seed(base, k1), k2);
}
inline uint64_t derive_seed(uint64_t base, uint64_t k1, uint64_t k2, uint64_t k3) {
    return derive_seed(derive_seed(base, k1, k2), k3);
}

// splitmix64 generator. Small, fast, and stateless across streams: one
// instance per derived stream.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return hash64(state_);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool next_bernoulli(double p) { return next_double() < p; }

    // Uniform integer in [0, n), unbiased via rejection.
    int next_below(int n) {
        assert(n > 0);
        const uint64_t un = static_cast<uint64_t>(n);
        const uint64_t limit = ~0ull - (~0ull % un);
        uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return static_cast<int>(x % un);
    }

    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

private:
    uint64_t state_;
};

// Key tags for the top-level stream namespaces of a run. Keeping them in one
// place documents the split layout: everything hangs off the master seed.
enum class StreamTag : uint64_t {
    Topology = 1,   // random graph construction
    Rates = 2,      // per-link mu / rho draws
    Arrivals = 3,   // (run, slot, link) arrival coin
    Service = 4,    // (run, slot, link) service coin
    Protocol = 5,   // (run, slot, node) augmentation protocol draws
};

inline uint64_t derive_seed(uint64_t base, StreamTag tag) {
    return derive_seed(base, static_cast<uint64_t>(tag));
}

} // namespace akucb

#endif
