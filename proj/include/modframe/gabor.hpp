#pragma once

#include "modframe/signal.hpp"

namespace modframe {

/// Time-frequency lattice with time step alpha and integer modulation
/// frequencies n_min..n_max (frequency step 1). alpha*k_count must tile the
/// period exactly and alpha must sit on the sample grid.
struct GaborLattice {
    double alpha = 1.0;
    std::int64_t n_min = 0;
    std::int64_t n_max = 0;
    std::size_t k_count = 1;

    std::size_t n_count() const { return static_cast<std::size_t>(n_max - n_min + 1); }

    void validate(const GridSpec& grid) const {
        grid.validate();
        if (!(alpha > 0.0)) throw std::invalid_argument("GaborLattice: alpha must be positive");
        if (!nearly_integer(alpha / grid.dx))
            throw std::invalid_argument("GaborLattice: alpha must be an integer multiple of dx");
        if (k_count == 0) throw std::invalid_argument("GaborLattice: k_count must be positive");
        if (!nearly_integer(alpha * static_cast<double>(k_count) / grid.period()) ||
            std::abs(alpha * static_cast<double>(k_count) - grid.period()) > 1e-9 * grid.period())
            throw std::invalid_argument("GaborLattice: alpha * k_count must equal the period");
        if (n_max < n_min) throw std::invalid_argument("GaborLattice: n_max < n_min");
        const double nyquist = 0.5 / grid.dx;
        if (static_cast<double>(n_max) > nyquist || static_cast<double>(-n_min) > nyquist)
            throw std::invalid_argument("GaborLattice: modulation range not representable on the grid");
    }
};

/// Gabor/STFT coefficients over a lattice, row-major (k, n).
struct CoeffGrid {
    std::vector<cplx> entries;
    GaborLattice lattice;

    cplx& at(std::size_t k, std::int64_t n) {
        return entries[k * lattice.n_count() + static_cast<std::size_t>(n - lattice.n_min)];
    }
    const cplx& at(std::size_t k, std::int64_t n) const {
        return entries[k * lattice.n_count() + static_cast<std::size_t>(n - lattice.n_min)];
    }
};

/// Lattice whose modulation range enumerates every distinct discrete
/// modulation exactly once (1/dx must be an integer for this to exist).
inline GaborLattice full_lattice(const GridSpec& grid, double alpha) {
    const double per_unit = 1.0 / grid.dx;
    if (!nearly_integer(per_unit))
        throw std::invalid_argument("full_lattice: 1/dx must be an integer");
    const std::int64_t S = round_to_int(per_unit);
    GaborLattice lat;
    lat.alpha = alpha;
    lat.k_count = static_cast<std::size_t>(round_to_int(grid.period() / alpha));
    lat.n_min = -(S / 2);
    lat.n_max = S - 1 - (S / 2);
    lat.validate(grid);
    return lat;
}

namespace detail {

inline bool integer_period(const Signal& f) { return nearly_integer(f.period()); }

/// Cyclic rotation by an integer number of samples (left shift of the origin
/// by `r` samples gives T_{r dx}).
inline std::vector<cplx> rotated_samples(const Signal& w, std::int64_t r) {
    const std::size_t L = w.size();
    std::vector<cplx> out(L);
    const std::size_t rr = static_cast<std::size_t>(mod_positive(r, static_cast<std::int64_t>(L)));
    for (std::size_t j = 0; j < L; ++j) out[j] = w.samples[(j + L - rr) % L];
    return out;
}

}  // namespace detail

/// Reference analysis: entries[k][n] = inner(f, modulate(translate(w, alpha k), n)).
/// O(k_count * n_count * L); kept as the oracle for the transform path.
inline CoeffGrid analyze_direct(const Signal& f, const Signal& w, const GaborLattice& lat) {
    require_same_grid(f, w, "analyze");
    lat.validate(f.grid());
    CoeffGrid out;
    out.lattice = lat;
    out.entries.resize(lat.k_count * lat.n_count());
    for (std::size_t k = 0; k < lat.k_count; ++k) {
        Signal shifted = translate(w, lat.alpha * static_cast<double>(k));
        for (std::int64_t n = lat.n_min; n <= lat.n_max; ++n)
            out.at(k, n) = inner(f, modulate(shifted, static_cast<double>(n)));
    }
    return out;
}

/// Gabor analysis against window w: entries[k][n] = <f, M_n T_{alpha k} w>.
/// When the period is an integer every modulation lands on a DFT bin of
/// f * conj(T_{alpha k} w), so each time shift costs one length-L transform.
inline CoeffGrid analyze(const Signal& f, const Signal& w, const GaborLattice& lat) {
    require_same_grid(f, w, "analyze");
    lat.validate(f.grid());
    if (!detail::integer_period(f)) return analyze_direct(f, w, lat);
    const std::size_t L = f.size();
    const std::int64_t Pi = round_to_int(f.period());
    CoeffGrid out;
    out.lattice = lat;
    out.entries.resize(lat.k_count * lat.n_count());
    std::vector<cplx> h(L);
    for (std::size_t k = 0; k < lat.k_count; ++k) {
        const std::int64_t r = round_to_int(lat.alpha * static_cast<double>(k) / f.dx);
        std::vector<cplx> wk = detail::rotated_samples(w, r);
        for (std::size_t j = 0; j < L; ++j) h[j] = f.samples[j] * std::conj(wk[j]);
        fft_inplace(h, false);
        for (std::int64_t n = lat.n_min; n <= lat.n_max; ++n) {
            const std::size_t bin =
                static_cast<std::size_t>(mod_positive(-n * Pi, static_cast<std::int64_t>(L)));
            const double ang = 2.0 * pi * static_cast<double>(n) * f.t0;
            out.at(k, n) = f.dx * cplx{std::cos(ang), std::sin(ang)} * h[bin];
        }
    }
    return out;
}

/// sum_{k,n} c_{kn} M_n T_{alpha k} w on the grid. Same bin identity as
/// analyze: for integer periods the modulation comb for one k is a single
/// inverse-style transform.
inline Signal synthesize(const CoeffGrid& c, const Signal& w) {
    const GaborLattice& lat = c.lattice;
    lat.validate(w.grid());
    for (const cplx& v : c.entries)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("synthesize: non-finite coefficient");
    const std::size_t L = w.size();
    Signal out(w.grid());
    if (!detail::integer_period(w)) {
        for (std::size_t k = 0; k < lat.k_count; ++k) {
            Signal shifted = translate(w, lat.alpha * static_cast<double>(k));
            for (std::int64_t n = lat.n_min; n <= lat.n_max; ++n) {
                Signal atom = modulate(shifted, static_cast<double>(n));
                const cplx coef = c.at(k, n);
                for (std::size_t j = 0; j < L; ++j) out.samples[j] += coef * atom.samples[j];
            }
        }
        return out;
    }
    const std::int64_t Pi = round_to_int(w.period());
    std::vector<cplx> spec(L);
    for (std::size_t k = 0; k < lat.k_count; ++k) {
        std::fill(spec.begin(), spec.end(), cplx{0.0, 0.0});
        for (std::int64_t n = lat.n_min; n <= lat.n_max; ++n) {
            const std::size_t bin =
                static_cast<std::size_t>(mod_positive(n * Pi, static_cast<std::int64_t>(L)));
            const double ang = -2.0 * pi * static_cast<double>(n) * w.t0;
            spec[bin] += c.at(k, n) * cplx{std::cos(ang), std::sin(ang)};
        }
        fft_inplace(spec, false);  // evaluates sum_b spec[b] e^{-2 pi i jb/L} at j
        const std::int64_t r = round_to_int(lat.alpha * static_cast<double>(k) / w.dx);
        std::vector<cplx> wk = detail::rotated_samples(w, r);
        for (std::size_t j = 0; j < L; ++j) out.samples[j] += spec[j] * wk[j];
    }
    return out;
}

/// Painless tight window: phi = bump / sqrt(sum_k bump^2(. - alpha k)).
/// Requires a nonnegative bump supported on an interval of length <= 1,
/// alpha < 1 tiling the period, and a gap-free cover.
inline Signal make_tight_window(const Signal& bump, double alpha) {
    bump.validate();
    const std::size_t L = bump.size();
    const double P = bump.period();
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument("make_tight_window: requires 0 < alpha < 1");
    if (!nearly_integer(P / alpha))
        throw std::invalid_argument("make_tight_window: period must be an integer multiple of alpha");
    if (!nearly_integer(alpha / bump.dx))
        throw std::invalid_argument("make_tight_window: alpha must be an integer multiple of dx");
    double mx = 0.0;
    for (const cplx& v : bump.samples) mx = std::max(mx, std::abs(v));
    for (const cplx& v : bump.samples)
        if (v.real() < -1e-12 * mx || std::abs(v.imag()) > 1e-12 * mx)
            throw std::invalid_argument("make_tight_window: bump must be real and nonnegative");
    // support must fit in a window of length <= 1 (cyclically)
    {
        const auto span_limit = static_cast<std::size_t>(round_to_int(1.0 / bump.dx));
        std::vector<std::size_t> supp;
        for (std::size_t j = 0; j < L; ++j)
            if (std::abs(bump.samples[j]) > 1e-14 * mx) supp.push_back(j);
        if (!supp.empty()) {
            // largest cyclic gap between consecutive support samples
            std::size_t largest_gap = supp.front() + L - supp.back();
            for (std::size_t i = 1; i < supp.size(); ++i)
                largest_gap = std::max(largest_gap, supp[i] - supp[i - 1]);
            if (L - largest_gap + 1 > span_limit)
                throw std::invalid_argument(
                    "make_tight_window: bump support exceeds one modulation period (length 1)");
        }
    }
    const std::size_t shifts = static_cast<std::size_t>(round_to_int(P / alpha));
    const std::int64_t step = round_to_int(alpha / bump.dx);
    std::vector<double> cover(L, 0.0);
    for (std::size_t k = 0; k < shifts; ++k) {
        const std::size_t r = static_cast<std::size_t>(
            mod_positive(static_cast<std::int64_t>(k) * step, static_cast<std::int64_t>(L)));
        for (std::size_t j = 0; j < L; ++j) {
            const double b = bump.samples[(j + L - r) % L].real();
            cover[j] += b * b;
        }
    }
    for (std::size_t j = 0; j < L; ++j)
        if (cover[j] < 1e-12)
            throw std::invalid_argument("make_tight_window: cover gap at t = " +
                                        std::to_string(bump.time_at(j)));
    Signal out = bump;
    for (std::size_t j = 0; j < L; ++j)
        out.samples[j] = std::abs(bump.samples[j]) > 0.0 ? bump.samples[j] / std::sqrt(cover[j])
                                                         : cplx{0.0, 0.0};
    return out;
}

/// Relative l2 reconstruction error of analyze-then-synthesize.
inline double roundtrip_error(const Signal& f, const Signal& w, const GaborLattice& lat) {
    const double nf = l2_norm(f);
    if (nf == 0.0) throw std::invalid_argument("roundtrip_error: zero signal");
    Signal rec = synthesize(analyze(f, w, lat), w);
    return l2_norm(rec - f) / nf;
}

/// Hermitian Gram matrix of a family of atoms.
struct GramMatrix {
    std::size_t n = 0;
    std::vector<cplx> data;

    const cplx& at(std::size_t i, std::size_t j) const { return data[i * n + j]; }

    double deviation_from_identity() const {
        double dev = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                dev = std::max(dev, std::abs(at(i, j) - (i == j ? cplx{1.0, 0.0} : cplx{0.0, 0.0})));
        return dev;
    }
};

inline GramMatrix gram(const std::vector<Signal>& atoms) {
    if (atoms.empty()) throw std::invalid_argument("gram: empty atom list");
    for (std::size_t i = 1; i < atoms.size(); ++i) require_same_grid(atoms[0], atoms[i], "gram");
    GramMatrix g;
    g.n = atoms.size();
    g.data.resize(g.n * g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            cplx v = inner(atoms[i], atoms[j]);
            g.data[i * g.n + j] = v;
            g.data[j * g.n + i] = std::conj(v);
        }
    }
    return g;
}

namespace detail {

/// Index of the sample at -t_j (periodic reflection); needs t0 on the grid.
inline std::size_t reflected_index(const Signal& g, std::size_t j) {
    const std::int64_t q = round_to_int(g.t0 / g.dx);
    const std::int64_t L = static_cast<std::int64_t>(g.size());
    return static_cast<std::size_t>(mod_positive(-static_cast<std::int64_t>(j) - 2 * q, L));
}

}  // namespace detail

/// Wilson atoms c_n T_{k/2} (M_n + (-1)^{k+n} M_{-n}) g with c_0 = 1/2 and
/// c_n = sqrt(2)/2 for n >= 1, over k in [k_min, k_max], n in [0, n_max].
/// The n = 0 combination vanishes identically for odd k; those null atoms
/// are dropped. For an admissible window (unit norm, even, tight on the
/// half-integer lattice) the family is orthonormal.
inline std::vector<Signal> wilson_system(const Signal& g, std::int64_t k_min, std::int64_t k_max,
                                         std::int64_t n_max) {
    g.validate();
    if (k_max < k_min || n_max < 0) throw std::invalid_argument("wilson_system: empty index range");
    if (!nearly_integer(g.t0 / g.dx))
        throw std::invalid_argument("wilson_system: t0 must lie on the sample grid");
    const std::size_t L = g.size();
    double peak = 0.0;
    for (const cplx& v : g.samples) peak = std::max(peak, std::abs(v));
    double sym_defect = 0.0;
    for (std::size_t j = 0; j < L; ++j)
        sym_defect = std::max(
            sym_defect, std::abs(g.samples[j] - std::conj(g.samples[detail::reflected_index(g, j)])));
    if (sym_defect > 1e-10 * std::max(1.0, peak))
        throw std::invalid_argument("wilson_system: window not symmetric, defect = " +
                                    std::to_string(sym_defect));
    const double norm_defect = std::abs(l2_norm(g) - 1.0);
    if (norm_defect > 1e-10)
        throw std::invalid_argument("wilson_system: window not unit norm, defect = " +
                                    std::to_string(norm_defect));
    // painless tightness of {M_n T_{k/2} g}: the half-integer cover must be flat
    if (!nearly_integer(0.5 / g.dx))
        throw std::invalid_argument("wilson_system: half-integer shifts must lie on the grid");
    {
        const std::int64_t step = round_to_int(0.5 / g.dx);
        const std::size_t shifts = static_cast<std::size_t>(round_to_int(g.period() / 0.5));
        std::vector<double> cover(L, 0.0);
        for (std::size_t k = 0; k < shifts; ++k) {
            const std::size_t r = static_cast<std::size_t>(
                mod_positive(static_cast<std::int64_t>(k) * step, static_cast<std::int64_t>(L)));
            for (std::size_t j = 0; j < L; ++j) {
                const double a = std::abs(g.samples[(j + L - r) % L]);
                cover[j] += a * a;
            }
        }
        double cmin = cover[0], cmax = cover[0];
        for (double cv : cover) {
            cmin = std::min(cmin, cv);
            cmax = std::max(cmax, cv);
        }
        if (cmax - cmin > 1e-8 * std::max(1.0, cmax))
            throw std::invalid_argument("wilson_system: window not tight on the (1/2, 1) lattice, "
                                        "cover spread = " +
                                        std::to_string(cmax - cmin));
    }
    std::vector<Signal> atoms;
    for (std::int64_t k = k_min; k <= k_max; ++k) {
        for (std::int64_t n = 0; n <= n_max; ++n) {
            const double cn = n == 0 ? 0.5 : std::sqrt(2.0) / 2.0;
            const double parity = ((k + n) % 2 == 0) ? 1.0 : -1.0;
            Signal comb = modulate(g, static_cast<double>(n));
            Signal neg = modulate(g, static_cast<double>(-n));
            for (std::size_t j = 0; j < L; ++j)
                comb.samples[j] = cn * (comb.samples[j] + parity * neg.samples[j]);
            Signal atom = translate(comb, static_cast<double>(k) / 2.0);
            double amax = 0.0;
            for (const cplx& v : atom.samples) amax = std::max(amax, std::abs(v));
            if (amax < 1e-14 * std::max(1.0, peak)) continue;  // n = 0, odd k
            atoms.push_back(std::move(atom));
        }
    }
    return atoms;
}

/// Empirical unconditionality constant: max over random sign patterns of
/// |synthesize(eps . analyze(f))| / |f| in l2. Requires a tight system.
inline double sign_flip_ratio(const Signal& f, const Signal& w, const GaborLattice& lat,
                              std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("sign_flip_ratio: trials must be >= 1");
    const double nf = l2_norm(f);
    if (nf == 0.0) throw std::invalid_argument("sign_flip_ratio: zero signal");
    const double rt = roundtrip_error(f, w, lat);
    if (rt > 1e-8)
        throw std::invalid_argument("sign_flip_ratio: system is not tight, roundtrip error = " +
                                    std::to_string(rt));
    CoeffGrid c = analyze(f, w, lat);
    double best = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Xorshift64Star rng = Xorshift64Star::split(seed, t);
        CoeffGrid flipped = c;
        for (cplx& v : flipped.entries) v *= rng.sign();
        best = std::max(best, l2_norm(synthesize(flipped, w)) / nf);
    }
    return best;
}

}  // namespace modframe
