#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace modframe {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Tolerance used when deciding whether a real quantity is an integer
/// (grid alignment, periodic modulation frequencies).
inline constexpr double integer_tol = 1e-9;

inline bool nearly_integer(double x, double tol = integer_tol) {
    return std::abs(x - std::round(x)) <= tol * std::max(1.0, std::abs(x));
}

inline std::int64_t round_to_int(double x) {
    return static_cast<std::int64_t>(std::llround(x));
}

inline std::int64_t mod_positive(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// xorshift64* generator. Deterministic given the seed; cheap to split so
/// that per-trial streams are independent of evaluation order.
class Xorshift64Star {
  public:
    explicit Xorshift64Star(std::uint64_t seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ULL) {}

    std::uint64_t next() {
        std::uint64_t x = state_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state_ = x;
        return x * 0x2545F4914F6CDD1DULL;
    }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (pairs cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * pi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * pi * u2);
    }

    cplx normal_complex() {
        double re = normal();
        double im = normal();
        return {re, im};
    }

    /// +1 or -1 with equal probability.
    double sign() { return (next() & 1u) ? 1.0 : -1.0; }

    /// Child stream for trial `index`, independent of how many draws the
    /// parent has made. splitmix64 finalizer on (seed, index).
    static Xorshift64Star split(std::uint64_t master_seed, std::uint64_t index) {
        std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return Xorshift64Star(z);
    }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace modframe
