#pragma once

#include <map>
#include <memory>

#include "modframe/common.hpp"

namespace modframe {
namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Twiddle table for one power-of-two size, kept alive per size so repeated
/// transforms on the same grid pay the trig cost once.
struct Pow2Plan {
    std::size_t n;
    std::vector<std::size_t> bitrev;
    std::vector<cplx> twiddle;  // e^{-2 pi i k / n}, k < n/2

    explicit Pow2Plan(std::size_t size) : n(size), bitrev(size) {
        std::size_t log2n = 0;
        while ((std::size_t{1} << log2n) < n) ++log2n;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (std::size_t b = 0; b < log2n; ++b)
                if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2n - 1 - b);
            bitrev[i] = r;
        }
        twiddle.resize(n / 2);
        for (std::size_t k = 0; k < n / 2; ++k) {
            double a = -2.0 * pi * static_cast<double>(k) / static_cast<double>(n);
            twiddle[k] = {std::cos(a), std::sin(a)};
        }
    }

    void run(std::vector<cplx>& a, bool inverse) const {
        for (std::size_t i = 0; i < n; ++i)
            if (i < bitrev[i]) std::swap(a[i], a[bitrev[i]]);
        for (std::size_t len = 2; len <= n; len <<= 1) {
            std::size_t step = n / len;
            for (std::size_t i = 0; i < n; i += len) {
                for (std::size_t j = 0; j < len / 2; ++j) {
                    cplx w = twiddle[j * step];
                    if (inverse) w = std::conj(w);
                    cplx u = a[i + j];
                    cplx v = a[i + j + len / 2] * w;
                    a[i + j] = u + v;
                    a[i + j + len / 2] = u - v;
                }
            }
        }
    }
};

inline const Pow2Plan& pow2_plan(std::size_t n) {
    thread_local std::map<std::size_t, std::unique_ptr<Pow2Plan>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<Pow2Plan>(n);
    return *slot;
}

}  // namespace detail

/// In-place DFT, a[k] <- sum_j a[j] e^{-2 pi i jk/n} (conjugated kernel and a
/// 1/n scale for the inverse). Power-of-two sizes run radix-2; everything
/// else goes through Bluestein's chirp transform.
inline void fft_inplace(std::vector<cplx>& a, bool inverse = false) {
    const std::size_t n = a.size();
    if (n <= 1) return;
    if (detail::is_pow2(n)) {
        detail::pow2_plan(n).run(a, inverse);
    } else {
        // Bluestein: x_j w^{j^2/2} convolved with w^{-k^2/2}.
        std::size_t m = 1;
        while (m < 2 * n + 1) m <<= 1;
        std::vector<cplx> chirp(n);
        for (std::size_t j = 0; j < n; ++j) {
            // j^2 mod 2n keeps the angle argument small.
            std::uint64_t j2 = (static_cast<std::uint64_t>(j) * j) % (2 * n);
            double ang = pi * static_cast<double>(j2) / static_cast<double>(n);
            if (!inverse) ang = -ang;
            chirp[j] = {std::cos(ang), std::sin(ang)};
        }
        std::vector<cplx> x(m, cplx{0.0, 0.0}), y(m, cplx{0.0, 0.0});
        for (std::size_t j = 0; j < n; ++j) x[j] = a[j] * chirp[j];
        y[0] = std::conj(chirp[0]);
        for (std::size_t j = 1; j < n; ++j) y[j] = y[m - j] = std::conj(chirp[j]);
        detail::pow2_plan(m).run(x, false);
        detail::pow2_plan(m).run(y, false);
        for (std::size_t j = 0; j < m; ++j) x[j] *= y[j];
        detail::pow2_plan(m).run(x, true);
        const double scale = 1.0 / static_cast<double>(m);
        for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k] * scale;
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& v : a) v *= scale;
    }
}

inline std::vector<cplx> fft(std::vector<cplx> a) {
    fft_inplace(a, false);
    return a;
}

inline std::vector<cplx> ifft(std::vector<cplx> a) {
    fft_inplace(a, true);
    return a;
}

}  // namespace modframe
