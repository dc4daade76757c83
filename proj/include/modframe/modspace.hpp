#pragma once

#include "modframe/gabor.hpp"
#include "modframe/probes.hpp"

namespace modframe {

/// Sampling layout of the time-frequency plane: x_count columns starting at
/// x0 with step dx_tf, w_count frequency rows starting at w0 with step dw_tf.
struct PlaneSpec {
    double x0 = 0.0;
    double dx_tf = 0.25;
    std::size_t x_count = 0;
    double w0 = 0.0;
    double dw_tf = 0.0;
    std::size_t w_count = 0;

    void validate() const {
        if (x_count == 0 || w_count == 0) throw std::invalid_argument("PlaneSpec: empty plane");
        if (!(dx_tf > 0.0) || !(dw_tf > 0.0))
            throw std::invalid_argument("PlaneSpec: cell dimensions must be positive");
    }

    /// Default plane for a grid: x over one period with the given step, w on
    /// the bin comb (spacing 1/P) covering [-w_max, w_max).
    static PlaneSpec for_grid(const GridSpec& grid, double w_max, double x_step = 0.25) {
        const double P = grid.period();
        PlaneSpec p;
        p.x0 = grid.t0;
        p.dx_tf = x_step;
        p.x_count = static_cast<std::size_t>(round_to_int(P / x_step));
        p.dw_tf = 1.0 / P;
        p.w_count = 2 * static_cast<std::size_t>(round_to_int(w_max * P));
        p.w0 = -w_max;
        return p;
    }
};

/// STFT samples over a PlaneSpec, row-major (x index, w index).
struct StftGrid {
    std::vector<cplx> values;
    PlaneSpec plane;

    cplx& at(std::size_t i, std::size_t j) { return values[i * plane.w_count + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return values[i * plane.w_count + j]; }
    double cell() const { return plane.dx_tf * plane.dw_tf; }
};

enum class NormMethod { stft, box };

inline const char* to_string(NormMethod m) { return m == NormMethod::stft ? "stft" : "box"; }

/// Computed norm surrogate plus the mass the truncation may have dropped.
struct NormReport {
    double p = 2.0;
    double p_conj = 2.0;
    double value = 0.0;
    NormMethod method = NormMethod::box;
    double truncation_tail = 0.0;
};

inline double conjugate_exponent(double p) {
    if (std::isinf(p)) return 1.0;
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    return p / (p - 1.0);
}

/// V_psi f over the plane: values[i][j] = <f, M_{w_j} T_{x_i} psi>.
/// Columns whose frequencies land on DFT bins are computed by one transform
/// of f * conj(T_x psi) each; anything else falls back to direct pairings.
inline StftGrid stft(const Signal& f, const Signal& psi, const PlaneSpec& plane) {
    require_same_grid(f, psi, "stft");
    plane.validate();
    const double psi_norm = l2_norm(psi);
    if (std::abs(psi_norm - 1.0) > 1e-8)
        throw std::invalid_argument("stft: window must be unit norm, measured " +
                                    std::to_string(psi_norm));
    const std::size_t L = f.size();
    const double P = f.period();
    StftGrid out;
    out.plane = plane;
    out.values.resize(plane.x_count * plane.w_count);
    const bool fast = nearly_integer(plane.w0 * P) && nearly_integer(plane.dw_tf * P);
    std::vector<cplx> h(L);
    for (std::size_t i = 0; i < plane.x_count; ++i) {
        const double x = plane.x0 + static_cast<double>(i) * plane.dx_tf;
        Signal shifted = translate(psi, x);
        if (fast) {
            for (std::size_t j = 0; j < L; ++j) h[j] = f.samples[j] * std::conj(shifted.samples[j]);
            fft_inplace(h, false);
            for (std::size_t j = 0; j < plane.w_count; ++j) {
                const std::int64_t m = round_to_int((plane.w0 + static_cast<double>(j) * plane.dw_tf) * P);
                const std::size_t bin =
                    static_cast<std::size_t>(mod_positive(-m, static_cast<std::int64_t>(L)));
                const double ang = 2.0 * pi * static_cast<double>(m) / P * f.t0;
                out.at(i, j) = f.dx * cplx{std::cos(ang), std::sin(ang)} * h[bin];
            }
        } else {
            for (std::size_t j = 0; j < plane.w_count; ++j) {
                const double w = plane.w0 + static_cast<double>(j) * plane.dw_tf;
                out.at(i, j) = inner(f, modulate(shifted, w));
            }
        }
    }
    return out;
}

/// L^p plane pairing sum V_f conj(V_g) * cell.
inline cplx plane_pairing(const StftGrid& a, const StftGrid& b) {
    if (a.values.size() != b.values.size()) throw std::invalid_argument("plane_pairing: shape mismatch");
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.values.size(); ++i) acc += a.values[i] * std::conj(b.values[i]);
    return acc * a.cell();
}

/// STFT-based modulation norm surrogate: Lp norm of V_psi f over the sampled
/// plane. The tail field carries the lp mass of the two extreme frequency
/// rows, an indicator of what the plane truncation is dropping.
inline NormReport mp_norm_stft(const Signal& f, const Signal& psi, double p, const PlaneSpec& plane) {
    StftGrid grid = stft(f, psi, plane);
    NormReport rep;
    rep.p = p;
    rep.p_conj = conjugate_exponent(p);
    rep.method = NormMethod::stft;
    rep.value = lp_norm(grid.values, p, grid.cell());
    std::vector<cplx> boundary;
    boundary.reserve(2 * plane.x_count);
    for (std::size_t i = 0; i < plane.x_count; ++i) {
        boundary.push_back(grid.at(i, 0));
        boundary.push_back(grid.at(i, plane.w_count - 1));
    }
    rep.truncation_tail = lp_norm(boundary, p, grid.cell());
    return rep;
}

/// Box-window Gabor coefficients on the integer lattice (alpha = 1,
/// frequency step 1). For grids with integer period, integer samples per
/// unit and t0 on the grid, each unit block of samples contributes one
/// small DFT, so the whole map costs O(L log(1/dx)).
inline CoeffGrid box_coefficients(const Signal& f, std::int64_t n_cap) {
    f.grid().validate();
    const double P = f.period();
    if (!nearly_integer(P)) throw std::invalid_argument("box_coefficients: period must be an integer");
    const std::int64_t Pi = round_to_int(P);
    GaborLattice lat;
    lat.alpha = 1.0;
    lat.k_count = static_cast<std::size_t>(Pi);
    const double per_unit = 1.0 / f.dx;
    const bool aligned = nearly_integer(per_unit) && nearly_integer(f.t0 / f.dx);
    std::int64_t S = aligned ? round_to_int(per_unit) : 0;
    // clip the symmetric range to the set of distinct discrete modulations
    lat.n_min = -n_cap;
    lat.n_max = n_cap;
    if (aligned && 2 * n_cap + 1 > S) {
        lat.n_min = -(S / 2);
        lat.n_max = S - 1 - (S / 2);
    }
    lat.validate(f.grid());
    if (!aligned) {
        Signal w = box_window(f.grid(), std::floor(f.t0), std::floor(f.t0) + 1.0);
        return analyze(f, w, lat);
    }
    const std::size_t L = f.size();
    const std::int64_t q = round_to_int(f.t0 / f.dx);
    CoeffGrid out;
    out.lattice = lat;
    out.entries.resize(lat.k_count * lat.n_count());
    std::vector<std::vector<cplx>> blocks(lat.k_count, std::vector<cplx>(static_cast<std::size_t>(S)));
    for (std::size_t j = 0; j < L; ++j) {
        const std::int64_t a = q + static_cast<std::int64_t>(j);
        const std::int64_t b = mod_positive(a >= 0 ? a / S : -((-a + S - 1) / S), Pi);
        const std::int64_t m = mod_positive(a, S);
        blocks[static_cast<std::size_t>(b)][static_cast<std::size_t>(m)] = f.samples[j];
    }
    for (std::size_t k = 0; k < lat.k_count; ++k) {
        fft_inplace(blocks[k], false);
        for (std::int64_t n = lat.n_min; n <= lat.n_max; ++n) {
            const std::size_t bin = static_cast<std::size_t>(mod_positive(-n, S));
            out.at(k, n) = f.dx * blocks[k][bin];
        }
    }
    return out;
}

namespace detail {

/// Tail formula from the 1/|n| coefficient decay of piecewise-smooth
/// signals: scale * ((p-1) n_cap^{p-1})^{-1/p}, scale measured as the
/// largest |n c_{kn}|.
inline double box_tail_estimate(const CoeffGrid& c, double p, std::int64_t n_cap) {
    double scale = 0.0;
    for (std::size_t k = 0; k < c.lattice.k_count; ++k)
        for (std::int64_t n = c.lattice.n_min; n <= c.lattice.n_max; ++n)
            if (n != 0) scale = std::max(scale, std::abs(c.at(k, n)) * std::abs(static_cast<double>(n)));
    if (scale == 0.0 || n_cap <= 0) return 0.0;
    return scale * std::pow((p - 1.0) * std::pow(static_cast<double>(n_cap), p - 1.0), -1.0 / p);
}

}  // namespace detail

/// The canonical discrete modulation-norm surrogate: lp norm (cell 1) of the
/// box-window coefficients on the integer lattice, |n| <= n_cap. Restricted
/// to p > 1, matching the range where the box system gives a two-sided
/// equivalence.
inline NormReport mp_norm_box(const Signal& f, double p, std::int64_t n_cap) {
    if (!(p > 1.0))
        throw std::domain_error("mp_norm_box: unsupported exponent, requires p > 1");
    CoeffGrid c = box_coefficients(f, n_cap);
    NormReport rep;
    rep.p = p;
    rep.p_conj = conjugate_exponent(p);
    rep.method = NormMethod::box;
    rep.value = lp_norm(c.entries, p, 1.0);
    rep.truncation_tail = detail::box_tail_estimate(c, p, n_cap);
    return rep;
}

/// l1 coefficient surrogate for the M^1 norm (reported, never asserted as a
/// two-sided equivalence).
inline double m1_surrogate(const Signal& f, std::int64_t n_cap) {
    CoeffGrid c = box_coefficients(f, n_cap);
    return lp_norm(c.entries, 1.0, 1.0);
}

/// Ratios probing the embedding, Fourier-invariance, orthogonality-pairing
/// and product inequalities of the norm surrogates.
struct InvarianceReport {
    double embed = 0.0;     // mp_norm_box(f,q) / mp_norm_box(f,p), p <= q
    double fourier2 = 0.0;  // mp_norm_box(fourier f, 2) / mp_norm_box(f, 2)
    double moyal = 0.0;     // relative pairing residual on the plane
    double product = 0.0;   // ||f phi|| / (M1(phi) ||f||)
};

struct InvarianceOptions {
    std::int64_t n_cap = 512;
    double w_max = 0.0;  // 0: use 1/(4 dx)
    double x_step = 0.25;
};

inline InvarianceReport invariance_suite(const Signal& f, const Signal& phi, double p, double q,
                                         const InvarianceOptions& opt = {}) {
    if (!(1.0 < p && p <= q)) throw std::invalid_argument("invariance_suite: requires 1 < p <= q");
    InvarianceReport rep;
    CoeffGrid c = box_coefficients(f, opt.n_cap);
    const double np = lp_norm(c.entries, p, 1.0);
    const double nq = lp_norm(c.entries, q, 1.0);
    rep.embed = np > 0.0 ? nq / np : 0.0;
    const double n2 = lp_norm(c.entries, 2.0, 1.0);
    const double n2hat = mp_norm_box(fourier(f), 2.0, opt.n_cap).value;
    rep.fourier2 = n2 > 0.0 ? n2hat / n2 : 0.0;
    // pairing identity against a fixed companion
    const GridSpec grid = f.grid();
    Signal psi = gaussian_window(grid, grid.t0 + grid.period() / 2.0);
    Signal g = modulate(translate(psi, 1.5), 2.0);
    {
        const double nrm = l2_norm(g);
        for (auto& v : g.samples) v /= nrm;
    }
    const double w_max = opt.w_max > 0.0 ? opt.w_max : 0.25 / grid.dx;
    PlaneSpec plane = PlaneSpec::for_grid(grid, w_max, opt.x_step);
    StftGrid vf = stft(f, psi, plane);
    StftGrid vg = stft(g, psi, plane);
    const cplx direct = inner(f, g);
    rep.moyal = std::abs(direct) > 0.0 ? std::abs(direct - plane_pairing(vf, vg)) / std::abs(direct)
                                       : std::abs(plane_pairing(vf, vg));
    const double m1_phi = m1_surrogate(phi, opt.n_cap);
    const double nprod = mp_norm_box(pointwise(f, phi), p, opt.n_cap).value;
    rep.product = (m1_phi > 0.0 && np > 0.0) ? nprod / (m1_phi * np) : 0.0;
    return rep;
}

}  // namespace modframe
