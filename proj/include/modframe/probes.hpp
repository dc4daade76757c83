#pragma once

#include "modframe/signal.hpp"

namespace modframe {

/// Periodized Gaussian e^{-pi (t-center)^2 / width^2}, normalized to unit L2
/// norm. The default width 1 keeps the effective support a few units wide,
/// far below the periods used here.
inline Signal gaussian_window(const GridSpec& spec, double center = 0.0, double width = 1.0) {
    Signal out(spec);
    const double P = spec.period();
    for (std::size_t j = 0; j < spec.length; ++j) {
        double d = std::fmod(spec.time_at(j) - center, P);
        if (d < 0.0) d += P;
        if (d > P / 2.0) d -= P;  // nearest periodic image
        double acc = 0.0;
        for (int m = -1; m <= 1; ++m) {
            const double u = (d + m * P) / width;
            acc += std::exp(-pi * u * u);
        }
        out.samples[j] = acc;
    }
    const double nrm = l2_norm(out);
    for (auto& v : out.samples) v /= nrm;
    return out;
}

/// sin(pi (t-a)/(b-a)) on [a, b), zero elsewhere.
inline Signal sin_bump(const GridSpec& spec, double a = 0.0, double b = 1.0) {
    Signal out(spec);
    const double P = spec.period();
    for (std::size_t j = 0; j < spec.length; ++j) {
        double rel = std::fmod(spec.time_at(j) - a, P);
        if (rel < 0.0) rel += P;
        out.samples[j] = rel < b - a ? cplx{std::sin(pi * rel / (b - a)), 0.0} : cplx{0.0, 0.0};
    }
    return out;
}

/// Triangle bump on [a, b), peak at the midpoint.
inline Signal triangle_bump(const GridSpec& spec, double a = 0.0, double b = 1.0) {
    Signal out(spec);
    const double P = spec.period();
    const double half = (b - a) / 2.0;
    for (std::size_t j = 0; j < spec.length; ++j) {
        double rel = std::fmod(spec.time_at(j) - a, P);
        if (rel < 0.0) rel += P;
        out.samples[j] = rel < b - a ? cplx{1.0 - std::abs(rel - half) / half, 0.0} : cplx{0.0, 0.0};
    }
    return out;
}

/// Single discrete harmonic e^{2 pi i m t / P}.
inline Signal harmonic(const GridSpec& spec, std::int64_t m) {
    Signal out(spec);
    const double P = spec.period();
    for (std::size_t j = 0; j < spec.length; ++j) {
        const double ang = 2.0 * pi * static_cast<double>(m) * spec.time_at(j) / P;
        out.samples[j] = {std::cos(ang), std::sin(ang)};
    }
    return out;
}

/// Unit-norm linear chirp under a Gaussian envelope, a convenient
/// time-frequency spread probe.
inline Signal chirp_probe(const GridSpec& spec, double center, double rate) {
    Signal out = gaussian_window(spec, center, 1.0);
    const double P = spec.period();
    for (std::size_t j = 0; j < spec.length; ++j) {
        double d = std::fmod(spec.time_at(j) - center, P);
        if (d < 0.0) d += P;
        if (d > P / 2.0) d -= P;
        const double ang = pi * rate * d * d;
        out.samples[j] *= cplx{std::cos(ang), std::sin(ang)};
    }
    const double nrm = l2_norm(out);
    for (auto& v : out.samples) v /= nrm;
    return out;
}

/// Random band-limited signal: independent complex Gaussians on the centered
/// frequency bins |nu| <= band, inverted to the time grid, unit L2 norm.
inline Signal random_bandlimited(const GridSpec& spec, double band, Xorshift64Star& rng) {
    spec.validate();
    const std::size_t L = spec.length;
    const double P = spec.period();
    std::vector<cplx> spectrum(L, cplx{0.0, 0.0});
    for (std::size_t m = 0; m < L; ++m) {
        const double nu = static_cast<double>(centered_bin_index(m, L)) / P;
        if (std::abs(nu) <= band) spectrum[m] = rng.normal_complex();
    }
    Signal out(spec);
    out.samples = ifft(std::move(spectrum));
    const double nrm = l2_norm(out);
    if (nrm > 0.0)
        for (auto& v : out.samples) v /= nrm;
    return out;
}

}  // namespace modframe
