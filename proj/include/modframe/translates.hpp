#pragma once

#include <map>
#include <string>

#include <Eigen/Dense>

#include "modframe/modspace.hpp"

namespace modframe {

/// Shift set Lambda = {lambda_n}, strictly increasing.
struct TranslateSet {
    std::vector<double> lambdas;

    void validate() const {
        for (std::size_t i = 1; i < lambdas.size(); ++i)
            if (!(lambdas[i] > lambdas[i - 1]))
                throw std::invalid_argument("TranslateSet: shifts must strictly increase");
        for (double l : lambdas)
            if (!std::isfinite(l)) throw std::invalid_argument("TranslateSet: non-finite shift");
    }
};

inline double uniform_gap(const TranslateSet& lam) {
    lam.validate();
    if (lam.lambdas.size() < 2) throw std::invalid_argument("uniform_gap: need at least 2 shifts");
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < lam.lambdas.size(); ++i)
        gap = std::min(gap, lam.lambdas[i] - lam.lambdas[i - 1]);
    return gap;
}

struct SectionReport {
    std::size_t N = 0;
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    std::map<std::string, double> residuals;
};

namespace detail {

/// Columns are the box-coefficient vectors of T_{lambda_n} g, n < N.
inline Eigen::MatrixXcd section_matrix(const Signal& g, const TranslateSet& lam, std::size_t N,
                                       std::int64_t n_cap) {
    lam.validate();
    if (N == 0 || N > lam.lambdas.size())
        throw std::invalid_argument("section_matrix: N must satisfy 1 <= N <= |Lambda|");
    if (N > 512) throw std::invalid_argument("section_matrix: N > 512 exceeds the section budget");
    Eigen::MatrixXcd A;
    for (std::size_t n = 0; n < N; ++n) {
        const CoeffGrid c = box_coefficients(translate(g, lam.lambdas[n]), n_cap);
        if (n == 0) A.resize(static_cast<Eigen::Index>(c.entries.size()), static_cast<Eigen::Index>(N));
        for (std::size_t i = 0; i < c.entries.size(); ++i)
            A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n)) = c.entries[i];
    }
    return A;
}

inline Eigen::VectorXcd coeff_vector(const Signal& f, std::int64_t n_cap) {
    const CoeffGrid c = box_coefficients(f, n_cap);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(c.entries.size()));
    for (std::size_t i = 0; i < c.entries.size(); ++i) v(static_cast<Eigen::Index>(i)) = c.entries[i];
    return v;
}

}  // namespace detail

/// Extreme singular values of the N-column synthesis matrix in the
/// box-coefficient l2 geometry.
inline SectionReport section_spectrum(const Signal& g, const TranslateSet& lam, std::size_t N,
                                      std::int64_t n_cap) {
    if (l2_norm(g) == 0.0) throw std::invalid_argument("section_spectrum: zero window");
    const Eigen::MatrixXcd A = detail::section_matrix(g, lam, N, n_cap);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
    const auto& s = svd.singularValues();
    SectionReport rep;
    rep.N = N;
    rep.sigma_max = s.size() > 0 ? s(0) : 0.0;
    rep.sigma_min = s.size() > 0 ? s(s.size() - 1) : 0.0;
    return rep;
}

/// ||f - Proj_{span{T_{lambda_n} g : n < N}} f|| / ||f|| via least squares on
/// the coefficient columns.
inline double completeness_residual(const Signal& g, const TranslateSet& lam, std::size_t N,
                                    const Signal& f, std::int64_t n_cap = 256) {
    if (l2_norm(g) == 0.0) throw std::invalid_argument("completeness_residual: zero window");
    const double fn = l2_norm(f);
    if (fn == 0.0) throw std::invalid_argument("completeness_residual: zero probe");
    const Eigen::MatrixXcd A = detail::section_matrix(g, lam, N, n_cap);
    const Eigen::VectorXcd b = detail::coeff_vector(f, n_cap);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXcd x = svd.solve(b);
    return (A * x - b).norm() / b.norm();
}

/// Partial sums S_K = sum_{n <= K} ||T_{lambda_n} f . psi . chi_[a,b)||^p of
/// the box norm surrogate, K = 1..N.
inline std::vector<double> summability_partial(const Signal& f, const Signal& psi, double a, double b,
                                               const TranslateSet& lam, double p, std::size_t N,
                                               std::int64_t n_cap = 256) {
    if (!(p > 1.0)) throw std::domain_error("summability_partial: unsupported exponent, requires p > 1");
    require_same_grid(f, psi, "summability_partial");
    if (N == 0 || N > lam.lambdas.size())
        throw std::invalid_argument("summability_partial: N must satisfy 1 <= N <= |Lambda|");
    if (!(uniform_gap(lam) > 0.0))
        throw std::invalid_argument("summability_partial: Lambda must be uniformly discrete (gap > 0)");
    const Signal box = box_window(f.grid(), a, b);
    std::vector<double> sums;
    sums.reserve(N);
    double acc = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
        const Signal term = pointwise(pointwise(translate(f, lam.lambdas[n]), psi), box);
        acc += std::pow(mp_norm_box(term, p, n_cap).value, p);
        sums.push_back(acc);
    }
    return sums;
}

/// ||ghat . T_k psi|| in the box norm surrogate for k = 0..k_max.
inline std::vector<double> vanishing_products(const Signal& ghat, const Signal& psi, double p,
                                              std::int64_t k_max, std::int64_t n_cap = 256) {
    if (!(p > 1.0)) throw std::domain_error("vanishing_products: unsupported exponent, requires p > 1");
    require_same_grid(ghat, psi, "vanishing_products");
    if (k_max < 0) throw std::invalid_argument("vanishing_products: k_max must be >= 0");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(k_max) + 1);
    for (std::int64_t k = 0; k <= k_max; ++k)
        out.push_back(mp_norm_box(pointwise(ghat, translate(psi, static_cast<double>(k))), p, n_cap).value);
    return out;
}

/// Zero the centered-frequency bins with nu in [lo, hi].
inline Signal spectral_notch(const Signal& f, double lo, double hi) {
    const std::size_t L = f.size();
    const double P = f.period();
    std::vector<cplx> spec = fft(f.samples);
    for (std::size_t m = 0; m < L; ++m) {
        const double nu = static_cast<double>(centered_bin_index(m, L)) / P;
        if (nu >= lo && nu <= hi) spec[m] = {0.0, 0.0};
    }
    Signal out = f;
    out.samples = ifft(std::move(spec));
    return out;
}

/// Keep only the centered-frequency bins with nu in [lo, hi].
inline Signal spectral_projection(const Signal& f, double lo, double hi) {
    const std::size_t L = f.size();
    const double P = f.period();
    std::vector<cplx> spec = fft(f.samples);
    for (std::size_t m = 0; m < L; ++m) {
        const double nu = static_cast<double>(centered_bin_index(m, L)) / P;
        if (!(nu >= lo && nu <= hi)) spec[m] = {0.0, 0.0};
    }
    Signal out = f;
    out.samples = ifft(std::move(spec));
    return out;
}

/// Expanding interval family (a, b], plus a tag for templates whose
/// relative-length series is known to diverge analytically.
struct IntervalFamily {
    std::vector<std::pair<double, double>> intervals;
    bool dyadic_template = false;

    void validate() const {
        double prev_end = 0.0;
        for (const auto& [a, b] : intervals) {
            if (!(a >= 0.0) || !(b > a))
                throw std::invalid_argument("IntervalFamily: intervals must satisfy 0 <= a < b");
            if (a < prev_end)
                throw std::invalid_argument("IntervalFamily: intervals must be non-overlapping increasing");
            prev_end = b;
        }
    }
};

/// (2^n, 2^{n+1}] for n = n_lo..n_hi; each relative-length term is exactly 1.
inline IntervalFamily dyadic_family(int n_lo, int n_hi) {
    if (n_hi < n_lo) throw std::invalid_argument("dyadic_family: n_hi < n_lo");
    IntervalFamily fam;
    fam.dyadic_template = true;
    for (int n = n_lo; n <= n_hi; ++n)
        fam.intervals.emplace_back(std::ldexp(1.0, n), std::ldexp(1.0, n + 1));
    return fam;
}

struct DensityReport {
    std::vector<std::pair<double, double>> intervals;
    std::vector<double> ratios;
    double divergence_partial = 0.0;
    double witness_C = 0.0;
    bool family_divergent = false;
};

/// Hit ratios |Lambda cap (a, b]| / (b - a) over the family, the minimum
/// ratio as the substantiality witness, and the partial relative-length sum.
/// The divergence flag is set only for the registered dyadic template; finite
/// data cannot certify divergence otherwise.
inline DensityReport effective_density(const TranslateSet& lam, const IntervalFamily& family) {
    lam.validate();
    family.validate();
    DensityReport rep;
    rep.intervals = family.intervals;
    rep.ratios.reserve(family.intervals.size());
    double min_ratio = std::numeric_limits<double>::infinity();
    for (const auto& [a, b] : family.intervals) {
        std::size_t count = 0;
        for (double l : lam.lambdas)
            if (l > a && l <= b) ++count;
        const double ratio = static_cast<double>(count) / (b - a);
        rep.ratios.push_back(ratio);
        min_ratio = std::min(min_ratio, ratio);
        if (a > 0.0) rep.divergence_partial += ((b - a) / a) * ((b - a) / a);
    }
    rep.witness_C = family.intervals.empty() || lam.lambdas.empty() ? 0.0 : min_ratio;
    rep.family_divergent = family.dyadic_template && !family.intervals.empty();
    return rep;
}

}  // namespace modframe
