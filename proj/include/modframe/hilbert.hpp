#pragma once

#include <mutex>

#include "modframe/signal.hpp"

namespace modframe {

/// Bilateral sequence c_{-M}..c_M stored left to right.
struct BiSequence {
    std::vector<cplx> values;

    void validate() const {
        if (values.empty() || values.size() % 2 == 0)
            throw std::invalid_argument("BiSequence: length must be odd (indices -M..M)");
        for (const cplx& v : values)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::invalid_argument("BiSequence: non-finite entry");
    }

    std::int64_t half_width() const { return static_cast<std::int64_t>(values.size() / 2); }
    cplx& at(std::int64_t m) { return values[static_cast<std::size_t>(m + half_width())]; }
    const cplx& at(std::int64_t m) const { return values[static_cast<std::size_t>(m + half_width())]; }
};

/// Direct O(M^2) evaluation of H_m = sum_{n != m} c_n / (m - n); the oracle
/// for the convolution path.
inline BiSequence discrete_hilbert_direct(const BiSequence& c) {
    c.validate();
    const std::int64_t M = c.half_width();
    BiSequence out;
    out.values.assign(c.values.size(), cplx{0.0, 0.0});
    for (std::int64_t m = -M; m <= M; ++m) {
        cplx acc{0.0, 0.0};
        for (std::int64_t n = -M; n <= M; ++n)
            if (n != m) acc += c.at(n) / static_cast<double>(m - n);
        out.at(m) = acc;
    }
    return out;
}

/// Fast path: linear convolution with the kernel (1/d for d != 0, 0 at 0),
/// zero-padded past 4M+1 to kill circular wrap. Checked against the direct
/// sum once per process.
inline BiSequence discrete_hilbert(const BiSequence& c) {
    c.validate();
    const std::int64_t M = c.half_width();
    std::size_t n = 1;
    while (n < 4 * static_cast<std::size_t>(M) + 1) n <<= 1;
    std::vector<cplx> a(n, cplx{0.0, 0.0}), k(n, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < c.values.size(); ++i) a[i] = c.values[i];
    // kernel index d = -2M..2M placed so that output slot m+M lands at
    // position (m - n) + 2M + (n + M) after convolution
    for (std::int64_t d = -2 * M; d <= 2 * M; ++d)
        if (d != 0) k[static_cast<std::size_t>(d + 2 * M)] = cplx{1.0 / static_cast<double>(d), 0.0};
    fft_inplace(a, false);
    fft_inplace(k, false);
    for (std::size_t i = 0; i < n; ++i) a[i] *= k[i];
    fft_inplace(a, true);
    BiSequence out;
    out.values.resize(c.values.size());
    // c slot (n + M) convolved with kernel slot (d + 2M) lands at n + d + 3M
    for (std::int64_t m = -M; m <= M; ++m)
        out.at(m) = a[static_cast<std::size_t>(m + 3 * M)];

    static std::once_flag checked;
    std::call_once(checked, [] {
        BiSequence probe;
        probe.values.resize(65);
        Xorshift64Star rng(0x5EED);
        for (auto& v : probe.values) v = rng.normal_complex();
        const std::int64_t pm = probe.half_width();
        std::size_t pn = 1;
        while (pn < 4 * static_cast<std::size_t>(pm) + 1) pn <<= 1;
        std::vector<cplx> pa(pn, cplx{0.0, 0.0}), pk(pn, cplx{0.0, 0.0});
        for (std::size_t i = 0; i < probe.values.size(); ++i) pa[i] = probe.values[i];
        for (std::int64_t d = -2 * pm; d <= 2 * pm; ++d)
            if (d != 0) pk[static_cast<std::size_t>(d + 2 * pm)] = cplx{1.0 / static_cast<double>(d), 0.0};
        fft_inplace(pa, false);
        fft_inplace(pk, false);
        for (std::size_t i = 0; i < pn; ++i) pa[i] *= pk[i];
        fft_inplace(pa, true);
        const BiSequence ref = discrete_hilbert_direct(probe);
        for (std::int64_t m = -pm; m <= pm; ++m)
            if (std::abs(pa[static_cast<std::size_t>(m + 3 * pm)] - ref.at(m)) > 1e-10)
                throw std::runtime_error("discrete_hilbert: convolution path failed its self check");
    });
    return out;
}

inline double lp_norm(const BiSequence& c, double p) { return lp_norm(std::span<const cplx>(c.values), p, 1.0); }

/// Max over seeded random complex inputs of ||H c||_p / ||c||_p, a lower
/// bound on the lemma's operator-norm constant. Trial streams split off the
/// master seed, so the estimate is reproducible.
inline double hilbert_norm_estimate(double p, std::int64_t length, std::int64_t trials,
                                    std::uint64_t seed) {
    if (!(p > 1.0)) throw std::domain_error("hilbert_norm_estimate: unsupported exponent, requires p > 1");
    if (length < 1 || length % 2 == 0)
        throw std::invalid_argument("hilbert_norm_estimate: length must be odd and positive");
    if (trials < 1) throw std::invalid_argument("hilbert_norm_estimate: trials must be >= 1");
    double best = 0.0;
    for (std::int64_t t = 0; t < trials; ++t) {
        Xorshift64Star rng = Xorshift64Star::split(seed, static_cast<std::uint64_t>(t));
        BiSequence c;
        c.values.resize(static_cast<std::size_t>(length));
        for (auto& v : c.values) v = rng.normal_complex();
        const double denom = lp_norm(c, p);
        if (denom == 0.0) continue;
        best = std::max(best, lp_norm(discrete_hilbert(c), p) / denom);
    }
    return best;
}

}  // namespace modframe
