#pragma once

#include <cmath>
#include <cstdint>

namespace risim {

// splitmix64 finalizer. All randomness in the library is derived from this,
// so results are reproducible across platforms and thread counts.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives an independent stream seed from (base, stream, index).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index = 0) {
    std::uint64_t s = mix64(base ^ 0x6a09e667f3bcc909ULL);
    s = mix64(s ^ stream * 0xd1342543de82ef95ULL);
    s = mix64(s ^ index * 0xaf251af3b0f025b5ULL);
    return s;
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, 1). Never returns exactly 0, safe for log().
    double next_open() {
        double u = next_double();
        return u > 0.0 ? u : 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    double exponential(double mean) { return -mean * std::log(next_open()); }

    // |CN(0,1)| (unit mean-square Rayleigh).
    double rayleigh_unit() { return std::sqrt(-std::log(next_open())); }

    // Poisson via Knuth; adequate for the small means used here.
    long poisson(double mean) {
        double limit = std::exp(-mean);
        double prod = 1.0;
        long n = -1;
        do {
            prod *= next_double();
            ++n;
        } while (prod > limit);
        return n;
    }

  private:
    std::uint64_t state_;
};

}  // namespace risim
