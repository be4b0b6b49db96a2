#pragma once

#include <cstdint>
#include <random>

#include "scamp/common.hpp"

namespace scamp {

// Deterministic RNG. Distributions are implemented by hand so that the same
// seed gives the same stream on every platform and standard library.
class rng {
  public:
    rng() : rng(0) {}
    explicit rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}
    rng(std::uint64_t seed, std::uint64_t stream)
        : gen_(splitmix64(seed ^ splitmix64(0x9e3779b97f4a7c15ull * (stream + 1)))) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1).
    double uniform() { return double(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int n) {  // [0, n)
        check(n > 0, "uniform_int: n must be positive");
        return int(next_u64() % std::uint64_t(n));
    }

    // Standard normal via Box-Muller (no cached spare; two uniforms per draw).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    bool coin() { return (next_u64() & 1u) != 0; }

    // Derived independent stream.
    rng split(std::uint64_t tag) const {
        rng r;
        r.gen_.seed(splitmix64(state_hash() ^ splitmix64(tag + 0x51ed2701ull)));
        return r;
    }

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

  private:
    std::uint64_t state_hash() const {
        // mt19937_64 has no state accessor; use a copy to draw without
        // disturbing this stream.
        std::mt19937_64 copy = gen_;
        return copy();
    }

    std::mt19937_64 gen_;
};

}  // namespace scamp
