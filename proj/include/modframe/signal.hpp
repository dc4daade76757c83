#pragma once

#include <algorithm>
#include <span>

#include "modframe/fft.hpp"

namespace modframe {

/// Metadata of a uniform periodic grid: L samples spaced dx apart, sample 0
/// sitting at time t0. The implied period is L*dx and every operator below
/// treats signals as periodic with that period.
struct GridSpec {
    std::size_t length = 0;
    double dx = 1.0;
    double t0 = 0.0;

    double period() const { return static_cast<double>(length) * dx; }
    double time_at(std::size_t j) const { return t0 + static_cast<double>(j) * dx; }

    void validate() const {
        if (length < 2) throw std::invalid_argument("GridSpec: length must be >= 2");
        if (!(dx > 0.0) || !std::isfinite(dx)) throw std::invalid_argument("GridSpec: dx must be positive");
        if (!std::isfinite(t0)) throw std::invalid_argument("GridSpec: t0 must be finite");
    }

    bool operator==(const GridSpec&) const = default;
};

/// Complex samples on a periodic grid. `periodicity_warning` is advisory
/// metadata set by modulate() when the requested frequency is not
/// periodizable on this grid; it never fails an operation.
struct Signal {
    std::vector<cplx> samples;
    double dx = 1.0;
    double t0 = 0.0;
    bool periodicity_warning = false;

    Signal() = default;
    explicit Signal(const GridSpec& g) : samples(g.length), dx(g.dx), t0(g.t0) { g.validate(); }

    std::size_t size() const { return samples.size(); }
    double period() const { return static_cast<double>(samples.size()) * dx; }
    double time_at(std::size_t j) const { return t0 + static_cast<double>(j) * dx; }
    GridSpec grid() const { return {samples.size(), dx, t0}; }

    void validate() const {
        grid().validate();
        for (const cplx& v : samples)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::invalid_argument("Signal: non-finite sample");
    }
};

inline bool same_grid(const Signal& a, const Signal& b) {
    return a.samples.size() == b.samples.size() && a.dx == b.dx && a.t0 == b.t0;
}

inline void require_same_grid(const Signal& a, const Signal& b, const char* op) {
    if (!same_grid(a, b))
        throw std::invalid_argument(std::string(op) + ": grid mismatch (L, dx, t0 must match exactly)");
}

/// Indicator of [a, b), left-closed right-open, sampled on the grid.
inline Signal box_window(const GridSpec& spec, double a, double b) {
    spec.validate();
    if (!(b > a)) throw std::invalid_argument("box_window: degenerate interval, requires b > a");
    Signal out(spec);
    const double P = spec.period();
    for (std::size_t j = 0; j < spec.length; ++j) {
        // position within one period, measured from a
        double rel = std::fmod(spec.time_at(j) - a, P);
        if (rel < 0.0) rel += P;
        out.samples[j] = (rel < b - a) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
    }
    return out;
}

/// Centered frequency of DFT bin m: range ceil(-L/2) .. ceil(L/2)-1 in units
/// of 1/P.
inline std::int64_t centered_bin_index(std::size_t m, std::size_t L) {
    auto mi = static_cast<std::int64_t>(m);
    auto Li = static_cast<std::int64_t>(L);
    return 2 * mi >= Li ? mi - Li : mi;
}

/// (T_tau f)(x) = f(x - tau), periodized. Integer multiples of dx rotate the
/// sample buffer; fractional shifts apply the delay phase ramp in the
/// discrete spectrum, which keeps the l2 norm exact.
inline Signal translate(const Signal& f, double tau) {
    const std::size_t L = f.size();
    const double P = f.period();
    double tau_red = std::fmod(tau, P);
    if (tau_red < 0.0) tau_red += P;
    const double steps = tau_red / f.dx;
    Signal out = f;
    if (nearly_integer(steps)) {
        const std::int64_t r = mod_positive(round_to_int(steps), static_cast<std::int64_t>(L));
        for (std::size_t j = 0; j < L; ++j)
            out.samples[j] = f.samples[(j + L - static_cast<std::size_t>(r)) % L];
        return out;
    }
    std::vector<cplx> spec = fft(f.samples);
    for (std::size_t m = 0; m < L; ++m) {
        const double nu = static_cast<double>(centered_bin_index(m, L)) / P;
        const double ang = -2.0 * pi * nu * tau_red;
        spec[m] *= cplx{std::cos(ang), std::sin(ang)};
    }
    out.samples = ifft(std::move(spec));
    return out;
}

/// (M_y f)(x) = e^{-2 pi i y x} f(x). Sign convention fixed project-wide:
/// modulation carries the minus sign, so inner(f, M_y g) integrates
/// f conj(g) e^{+2 pi i y x}.
inline Signal modulate(const Signal& f, double y) {
    Signal out = f;
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double ang = -2.0 * pi * y * f.time_at(j);
        out.samples[j] = f.samples[j] * cplx{std::cos(ang), std::sin(ang)};
    }
    if (!nearly_integer(y * f.period())) out.periodicity_warning = true;
    return out;
}

/// Riemann-sum pairing sum_j f_j conj(g_j) dx; conjugate-linear in g.
inline cplx inner(const Signal& f, const Signal& g) {
    require_same_grid(f, g, "inner");
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < f.size(); ++j) acc += f.samples[j] * std::conj(g.samples[j]);
    return acc * f.dx;
}

/// Discrete approximation of the Fourier transform on the dual grid:
/// frequencies ceil(-L/2)/P .. (ceil(L/2)-1)/P with spacing 1/P, value
/// fhat(nu) = dx * sum_j f_j e^{-2 pi i nu t_j}. Unitary in the continuum
/// normalization.
inline Signal fourier(const Signal& f) {
    const std::size_t L = f.size();
    const double P = f.period();
    std::vector<cplx> spec = fft(f.samples);
    Signal out;
    out.dx = 1.0 / P;
    // ceil(-L/2): -L/2 for even L, -(L-1)/2 for odd L.
    const std::int64_t k0 = -(static_cast<std::int64_t>(L) / 2);
    out.t0 = static_cast<double>(k0) / P;
    out.samples.resize(L);
    for (std::size_t i = 0; i < L; ++i) {
        const std::int64_t m = k0 + static_cast<std::int64_t>(i);
        const double nu = static_cast<double>(m) / P;
        const double ang = -2.0 * pi * nu * f.t0;
        const std::size_t bin = static_cast<std::size_t>(mod_positive(m, static_cast<std::int64_t>(L)));
        out.samples[i] = f.dx * cplx{std::cos(ang), std::sin(ang)} * spec[bin];
    }
    return out;
}

/// (sum |v|^p cell)^{1/p}; max |v| when p = infinity. cell = 1 gives the
/// plain lp sequence norm, cell = dx the L^p grid norm.
inline double lp_norm(std::span<const cplx> values, double p, double cell) {
    if (!(cell > 0.0)) throw std::invalid_argument("lp_norm: cell must be positive");
    if (std::isinf(p)) {
        double mx = 0.0;
        for (const cplx& v : values) mx = std::max(mx, std::abs(v));
        return mx;
    }
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: requires p >= 1");
    double acc = 0.0;
    for (const cplx& v : values) acc += std::pow(std::abs(v), p);
    return std::pow(acc * cell, 1.0 / p);
}

inline double lp_norm(const std::vector<cplx>& values, double p, double cell) {
    return lp_norm(std::span<const cplx>(values), p, cell);
}

/// L2 norm with the grid measure.
inline double l2_norm(const Signal& f) { return lp_norm(f.samples, 2.0, f.dx); }

inline Signal operator+(const Signal& a, const Signal& b) {
    require_same_grid(a, b, "operator+");
    Signal out = a;
    for (std::size_t j = 0; j < a.size(); ++j) out.samples[j] += b.samples[j];
    return out;
}

inline Signal operator-(const Signal& a, const Signal& b) {
    require_same_grid(a, b, "operator-");
    Signal out = a;
    for (std::size_t j = 0; j < a.size(); ++j) out.samples[j] -= b.samples[j];
    return out;
}

inline Signal operator*(const cplx& c, const Signal& a) {
    Signal out = a;
    for (auto& v : out.samples) v *= c;
    return out;
}

/// Pointwise product (both factors on the same grid).
inline Signal pointwise(const Signal& a, const Signal& b) {
    require_same_grid(a, b, "pointwise");
    Signal out = a;
    for (std::size_t j = 0; j < a.size(); ++j) out.samples[j] *= b.samples[j];
    return out;
}

}  // namespace modframe
