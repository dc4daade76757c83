#pragma once

#include "modframe/modspace.hpp"

namespace modframe {

/// Right-continuous step function: value[i] on [breakpoints[i], breakpoints[i+1]).
struct PiecewiseConstant {
    std::vector<double> breakpoints;
    std::vector<cplx> values;

    void validate() const {
        if (breakpoints.size() < 2 || values.size() + 1 != breakpoints.size())
            throw std::invalid_argument("PiecewiseConstant: need m+1 breakpoints for m values");
        for (std::size_t i = 1; i < breakpoints.size(); ++i)
            if (!(breakpoints[i] > breakpoints[i - 1]))
                throw std::invalid_argument("PiecewiseConstant: breakpoints must strictly increase");
    }

    double support_begin() const { return breakpoints.front(); }
    double support_end() const { return breakpoints.back(); }

    cplx value_at(double x) const {
        if (x < breakpoints.front() || x >= breakpoints.back()) return {0.0, 0.0};
        auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
        return values[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
    }
};

/// R_n = sign(sin(2^n pi x)) on [0,1): value (-1)^j on [j/2^n, (j+1)/2^n).
inline PiecewiseConstant rademacher(int n) {
    if (n < 0) throw std::invalid_argument("rademacher: n must be >= 0");
    if (n > 24) throw std::length_error("rademacher: n > 24 exceeds the breakpoint budget");
    const std::size_t m = std::size_t{1} << n;
    PiecewiseConstant pc;
    pc.breakpoints.resize(m + 1);
    pc.values.resize(m);
    for (std::size_t j = 0; j <= m; ++j)
        pc.breakpoints[j] = static_cast<double>(j) / static_cast<double>(m);
    for (std::size_t j = 0; j < m; ++j) pc.values[j] = (j % 2 == 0) ? cplx{1.0, 0.0} : cplx{-1.0, 0.0};
    return pc;
}

/// Exact integral sum_i v_i int_{x_i}^{x_{i+1}} e^{2 pi i k t} dt via the
/// primitive; no quadrature error beyond rounding.
inline cplx exact_fourier_coeff(const PiecewiseConstant& pc, std::int64_t k) {
    pc.validate();
    cplx acc{0.0, 0.0};
    if (k == 0) {
        for (std::size_t i = 0; i < pc.values.size(); ++i)
            acc += pc.values[i] * (pc.breakpoints[i + 1] - pc.breakpoints[i]);
        return acc;
    }
    const cplx denom{0.0, 2.0 * pi * static_cast<double>(k)};
    auto prim = [&](double x) {
        const double ang = 2.0 * pi * static_cast<double>(k) * x;
        return cplx{std::cos(ang), std::sin(ang)} / denom;
    };
    for (std::size_t i = 0; i < pc.values.size(); ++i)
        acc += pc.values[i] * (prim(pc.breakpoints[i + 1]) - prim(pc.breakpoints[i]));
    return acc;
}

/// Closed form for int R_N e^{2 pi i k t} dt: -2/(pi i j) when k = j 2^{N-1}
/// with j odd, zero otherwise (including k = 0, since R_N has zero mean for
/// N >= 1).
inline cplx rademacher_coeff_closed_form(int N, std::int64_t k) {
    if (N < 1) throw std::invalid_argument("rademacher_coeff_closed_form: N must be >= 1");
    if (k == 0) return {0.0, 0.0};
    const std::int64_t half = std::int64_t{1} << (N - 1);
    if (k % half != 0) return {0.0, 0.0};
    const std::int64_t j = k / half;
    if (j % 2 == 0) return {0.0, 0.0};
    // -2/(pi i j) = (2/(pi j)) i
    return {0.0, 2.0 / (pi * static_cast<double>(j))};
}

/// Quadrature bridge from the sampled pipeline: integral of the
/// left-constant interpolant of the samples against e^{2 pi i k t} over one
/// period. Equals the Riemann sum times the zero-order-hold cell factor, and
/// is exact whenever the underlying function is piecewise constant with
/// breakpoints on the grid.
inline cplx sampled_fourier_coeff(const Signal& f, std::int64_t k) {
    cplx riemann{0.0, 0.0};
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double ang = 2.0 * pi * static_cast<double>(k) * f.time_at(j);
        riemann += f.samples[j] * cplx{std::cos(ang), std::sin(ang)};
    }
    riemann *= f.dx;
    if (k == 0) return riemann;
    const double kd = 2.0 * pi * static_cast<double>(k) * f.dx;
    const cplx cell_factor = (cplx{std::cos(kd), std::sin(kd)} - 1.0) / cplx{0.0, kd};
    return riemann * cell_factor;
}

/// Sample a step function onto a grid (left-limit convention matches the
/// half-open pieces).
inline Signal piecewise_to_signal(const PiecewiseConstant& pc, const GridSpec& spec) {
    pc.validate();
    Signal out(spec);
    for (std::size_t j = 0; j < spec.length; ++j) out.samples[j] = pc.value_at(spec.time_at(j));
    return out;
}

/// Ratio of the lp norm of the exact box-Gabor coefficients of R_N
/// (enumerated over the frequency lattice j 2^{N-1}, |j| <= j_cap) to the
/// analytic series (2/pi) (2 sum_{odd j <= j_cap} j^{-p})^{1/p}. The two
/// routes enumerate the same magnitudes, so the ratio is 1 up to rounding.
inline double rademacher_norm_ratio(int N, double p, std::int64_t j_cap) {
    if (!(p > 1.0)) throw std::domain_error("rademacher_norm_ratio: unsupported exponent, requires p > 1");
    if (N < 1) throw std::invalid_argument("rademacher_norm_ratio: N must be >= 1");
    if (j_cap < 64) throw std::invalid_argument("rademacher_norm_ratio: j_cap must be >= 64");
    const PiecewiseConstant rn = rademacher(N);
    const std::int64_t half = std::int64_t{1} << (N - 1);
    double num_acc = 0.0;
    for (std::int64_t j = -j_cap; j <= j_cap; ++j) {
        if (j == 0 || j % 2 == 0) continue;
        num_acc += std::pow(std::abs(exact_fourier_coeff(rn, j * half)), p);
    }
    const double numerator = std::pow(num_acc, 1.0 / p);
    double series = 0.0;
    for (std::int64_t j = 1; j <= j_cap; j += 2) series += std::pow(static_cast<double>(j), -p);
    const double denominator = (2.0 / pi) * std::pow(2.0 * series, 1.0 / p);
    return numerator / denominator;
}

/// |<R_n, f>| for n = 1..n_max, pairing the exact Rademacher steps against
/// the piecewise-linear interpolant of f on [0, 1).
inline std::vector<double> decay_sequence(const Signal& f, int n_max) {
    if (n_max < 1 || n_max > 20) throw std::invalid_argument("decay_sequence: requires 1 <= n_max <= 20");
    f.grid().validate();
    const std::size_t L = f.size();
    const double P = f.period();
    auto interp = [&](double x) -> cplx {
        double u = std::fmod(x - f.t0, P);
        if (u < 0.0) u += P;
        const double pos = u / f.dx;
        const std::size_t j0 = static_cast<std::size_t>(pos) % L;
        const std::size_t j1 = (j0 + 1) % L;
        const double frac = pos - std::floor(pos);
        return f.samples[j0] * (1.0 - frac) + f.samples[j1] * frac;
    };
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        // merge dyadic breakpoints with grid points; the interpolant is
        // linear on each cell, so the trapezoid rule per cell is exact
        const std::size_t pieces = std::size_t{1} << n;
        cplx acc{0.0, 0.0};
        for (std::size_t piece = 0; piece < pieces; ++piece) {
            const double a = static_cast<double>(piece) / static_cast<double>(pieces);
            const double b = static_cast<double>(piece + 1) / static_cast<double>(pieces);
            const double sign = (piece % 2 == 0) ? 1.0 : -1.0;
            // grid cells intersecting [a, b)
            double x = a;
            while (x < b - 1e-15) {
                const double next_grid = f.t0 + (std::floor((x - f.t0) / f.dx) + 1.0) * f.dx;
                const double y = std::min(b, next_grid);
                acc += sign * (y - x) * 0.5 * (std::conj(interp(x)) + std::conj(interp(y)));
                x = y;
            }
        }
        out.push_back(std::abs(acc));
    }
    return out;
}

struct KhintchineResult {
    double ratio = 0.0;          // ||sum c_n R_n||_{L^p[0,1]} / ||c||_2
    double p2_reference = 1.0;   // the analytic p = 2 value
};

/// ||sum_{n=1}^N c_n R_n||_{L^p([0,1])} computed by exact enumeration of the
/// 2^N constant pieces, normalized by ||c||_2.
inline KhintchineResult khintchine_bounds(const std::vector<double>& c, double p) {
    if (c.empty()) throw std::invalid_argument("khintchine_bounds: empty coefficient vector");
    if (c.size() > 14) throw std::length_error("khintchine_bounds: N > 14 exceeds the piece budget");
    if (!(p >= 1.0) && !std::isinf(p)) throw std::invalid_argument("khintchine_bounds: requires p >= 1");
    const int N = static_cast<int>(c.size());
    double c2 = 0.0;
    for (double v : c) c2 += v * v;
    c2 = std::sqrt(c2);
    if (c2 == 0.0) throw std::invalid_argument("khintchine_bounds: zero coefficient vector");
    const std::size_t pieces = std::size_t{1} << N;
    const double measure = 1.0 / static_cast<double>(pieces);
    double acc = 0.0, mx = 0.0;
    for (std::size_t m = 0; m < pieces; ++m) {
        double s = 0.0;
        for (int n = 1; n <= N; ++n) {
            const std::size_t block = m >> (N - n);  // R_n is (-1)^block on this piece
            s += (block % 2 == 0 ? 1.0 : -1.0) * c[static_cast<std::size_t>(n - 1)];
        }
        acc += std::pow(std::abs(s), std::isinf(p) ? 1.0 : p) * measure;
        mx = std::max(mx, std::abs(s));
    }
    KhintchineResult res;
    res.ratio = (std::isinf(p) ? mx : std::pow(acc, 1.0 / p)) / c2;
    return res;
}

struct WilsonBumpReport {
    double gram_deviation = 0.0;
    double m1_sup = 0.0;        // sup_n of the box l1 surrogate
    double m1_base = 0.0;       // the n = 0 value
    std::vector<double> probe_decay;
};

/// Bump sequence phi_n = c_n (M_n + (-1)^n M_{-n}) phi for a window
/// supported in [0,1) that is tight on the (1/2, 1) lattice. For even n this
/// is sqrt(2) cos(2 pi n x) phi(x).
inline std::pair<std::vector<Signal>, WilsonBumpReport> wilson_bumps(const Signal& phi, int n_max,
                                                                    const Signal* probe = nullptr) {
    phi.validate();
    if (n_max < 0) throw std::invalid_argument("wilson_bumps: n_max must be >= 0");
    const std::size_t L = phi.size();
    double peak = 0.0;
    for (const cplx& v : phi.samples) peak = std::max(peak, std::abs(v));
    for (std::size_t j = 0; j < L; ++j) {
        double u = std::fmod(phi.time_at(j), phi.period());
        if (u < 0.0) u += phi.period();
        if (u >= 1.0 && std::abs(phi.samples[j]) > 1e-12 * peak)
            throw std::invalid_argument("wilson_bumps: window not supported in [0,1), mass at t = " +
                                        std::to_string(phi.time_at(j)));
    }
    {
        // half-integer cover must be flat (the DJJ tightness hypothesis)
        const std::int64_t step = round_to_int(0.5 / phi.dx);
        if (!nearly_integer(0.5 / phi.dx))
            throw std::invalid_argument("wilson_bumps: half-integer shifts must lie on the grid");
        const std::size_t shifts = static_cast<std::size_t>(round_to_int(phi.period() / 0.5));
        std::vector<double> cover(L, 0.0);
        for (std::size_t k = 0; k < shifts; ++k) {
            const std::size_t r = static_cast<std::size_t>(
                mod_positive(static_cast<std::int64_t>(k) * step, static_cast<std::int64_t>(L)));
            for (std::size_t j = 0; j < L; ++j) {
                const double a = std::abs(phi.samples[(j + L - r) % L]);
                cover[j] += a * a;
            }
        }
        double cmin = cover[0], cmax = cover[0];
        for (double cv : cover) {
            cmin = std::min(cmin, cv);
            cmax = std::max(cmax, cv);
        }
        if (cmax - cmin > 1e-8 * std::max(1.0, cmax))
            throw std::invalid_argument("wilson_bumps: window not tight on the (1/2,1) lattice");
    }
    std::vector<Signal> bumps;
    bumps.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        const double cn = n == 0 ? 0.5 : std::sqrt(2.0) / 2.0;
        const double parity = (n % 2 == 0) ? 1.0 : -1.0;
        Signal pos = modulate(phi, static_cast<double>(n));
        Signal neg = modulate(phi, static_cast<double>(-n));
        for (std::size_t j = 0; j < L; ++j)
            pos.samples[j] = cn * (pos.samples[j] + parity * neg.samples[j]);
        bumps.push_back(std::move(pos));
    }
    WilsonBumpReport rep;
    rep.gram_deviation = gram(bumps).deviation_from_identity();
    const std::int64_t n_cap = std::max<std::int64_t>(64, 4 * (n_max + 1));
    for (int n = 0; n <= n_max; ++n) {
        const double m1 = m1_surrogate(bumps[static_cast<std::size_t>(n)], n_cap);
        rep.m1_sup = std::max(rep.m1_sup, m1);
        if (n == 0) rep.m1_base = m1;
    }
    if (probe) {
        rep.probe_decay.reserve(bumps.size());
        for (const Signal& b : bumps) rep.probe_decay.push_back(std::abs(inner(b, *probe)));
    }
    return {std::move(bumps), rep};
}

}  // namespace modframe
