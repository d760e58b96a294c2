#pragma once

#include <cmath>
#include <cstdint>

namespace harmin {

// splitmix64: the stream for (seed, stream_id) is derived statelessly, so
// per-trial streams reproduce identically regardless of evaluation order.
struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

inline std::uint64_t mix_streams(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 s{seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1))};
    s.next();
    return s.next();
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : sm_{seed} { sm_.next(); }
    Rng(std::uint64_t seed, std::uint64_t stream) : sm_{mix_streams(seed, stream)} {}

    std::uint64_t next_u64() { return sm_.next(); }

    // uniform in [0, 1)
    double uniform01() { return static_cast<double>(sm_.next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // uniform integer in [0, n)
    std::uint64_t uniform_index(std::uint64_t n) { return sm_.next() % n; }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    SplitMix64 sm_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Halton radical-inverse sequence, index >= 1.
inline double halton(std::uint64_t index, std::uint64_t base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

}  // namespace harmin
