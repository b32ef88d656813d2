#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

#include "shadowcover/vec.hpp"

namespace shadowcover {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        h *= 0x100000001B3ULL;
    }
    return h;
}

// Small deterministic generator (splitmix64 stream). All randomness in the
// library flows through named streams derived from one root seed, so results
// are reproducible independent of call order and thread count.
class Rng {
public:
    explicit Rng(std::uint64_t state) : state_(state) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        // Box-Muller; u1 kept strictly positive
        double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

    Vec gaussian_vec(int n) {
        Vec v(static_cast<std::size_t>(n));
        for (auto& x : v) x = normal();
        return v;
    }

    Vec unit_vec(int n) {
        for (;;) {
            Vec v = gaussian_vec(n);
            double m = norm(v);
            if (m > 1e-12) return scaled(v, 1.0 / m);
        }
    }

    // uniform integer in [0, m)
    std::uint64_t below(std::uint64_t m) { return next_u64() % m; }

private:
    std::uint64_t state_;
    bool has_cached_ = false;
    double cached_ = 0.0;
};

// Derives an independent stream from (root seed, stream name, index).
inline Rng derive_rng(std::uint64_t seed, std::string_view stream, std::uint64_t index = 0) {
    std::uint64_t s = splitmix64(seed ^ fnv1a(stream));
    s = splitmix64(s ^ (0xD1B54A32D192ED03ULL * (index + 1)));
    return Rng(s);
}

}  // namespace shadowcover
