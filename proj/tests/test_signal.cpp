#include <catch2/catch_amalgamated.hpp>

#include "modframe/probes.hpp"

using namespace modframe;

namespace {

double max_abs_diff(const Signal& a, const Signal& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.samples[i] - b.samples[i]));
    return d;
}

}  // namespace

TEST_CASE("grid validation") {
    CHECK_THROWS_AS((GridSpec{1, 1.0, 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((GridSpec{8, -1.0, 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((GridSpec{8, 1.0, std::nan("")}.validate()), std::invalid_argument);
    GridSpec ok{8, 0.25, 0.0};
    CHECK_NOTHROW(ok.validate());
    CHECK(ok.period() == 2.0);
    Signal bad(ok);
    bad.samples[3] = {std::numeric_limits<double>::infinity(), 0.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("box window indicator convention") {
    const GridSpec spec{8, 0.25, 0.0};
    const Signal b = box_window(spec, 0.0, 1.0);
    const double expect[8] = {1, 1, 1, 1, 0, 0, 0, 0};
    for (std::size_t j = 0; j < 8; ++j) CHECK(b.samples[j].real() == expect[j]);

    const Signal full = box_window(spec, 0.0, 2.0);
    for (const cplx& v : full.samples) CHECK(v == cplx{1.0, 0.0});

    const Signal narrow = box_window(spec, 0.1, 0.35);
    for (std::size_t j = 0; j < 8; ++j) CHECK(narrow.samples[j].real() == (j == 1 ? 1.0 : 0.0));

    CHECK_THROWS_AS(box_window(spec, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("translate: identity, integer rotation, fractional harmonic shift") {
    const GridSpec spec{256, 1.0 / 16.0, 0.0};
    Signal delta(spec);
    delta.samples[0] = {1.0, 0.0};
    CHECK(max_abs_diff(translate(delta, 0.0), delta) == 0.0);

    const Signal d3 = translate(delta, 3.0 * spec.dx);
    for (std::size_t j = 0; j < spec.length; ++j)
        CHECK(d3.samples[j] == (j == 3 ? cplx{1.0, 0.0} : cplx{0.0, 0.0}));

    const Signal h = harmonic(spec, 1);
    const Signal hs = translate(h, 0.5);
    const double P = spec.period();
    for (std::size_t j = 0; j < spec.length; ++j) {
        const double ang = 2.0 * pi * (spec.time_at(j) - 0.5) / P;
        CHECK(std::abs(hs.samples[j] - cplx{std::cos(ang), std::sin(ang)}) < 1e-12);
    }
}

TEST_CASE("translate composes and preserves the l2 norm") {
    const GridSpec spec{512, 1.0 / 32.0, 0.0};
    Xorshift64Star rng(42);
    const Signal f = random_bandlimited(spec, 4.0, rng);
    const Signal a = translate(f, 0.3 + 0.45);
    const Signal b = translate(translate(f, 0.3), 0.45);
    CHECK(max_abs_diff(a, b) < 1e-12);
    CHECK(l2_norm(translate(f, 0.37)) == Catch::Approx(l2_norm(f)).epsilon(1e-12));
}

TEST_CASE("modulate carries the minus-sign convention") {
    const GridSpec spec{256, 1.0 / 16.0, 0.0};
    Signal ones(spec);
    for (auto& v : ones.samples) v = {1.0, 0.0};

    CHECK(max_abs_diff(modulate(ones, 0.0), ones) == 0.0);

    const Signal m = modulate(ones, 1.0);
    for (std::size_t j = 0; j < spec.length; ++j) {
        const double ang = -2.0 * pi * spec.time_at(j);
        CHECK(std::abs(m.samples[j] - cplx{std::cos(ang), std::sin(ang)}) < 1e-14);
    }

    Xorshift64Star rng(9);
    const Signal f = random_bandlimited(spec, 4.0, rng);
    CHECK(max_abs_diff(modulate(modulate(f, 0.625), -0.625), f) < 1e-15);
}

TEST_CASE("modulate flags non-periodizable frequencies") {
    const GridSpec spec{256, 1.0 / 16.0, 0.0};  // P = 16
    Signal ones(spec);
    for (auto& v : ones.samples) v = {1.0, 0.0};
    CHECK_FALSE(modulate(ones, 0.25).periodicity_warning);  // y P = 4
    CHECK(modulate(ones, 0.3).periodicity_warning);         // y P = 4.8
}

TEST_CASE("inner product: positivity, box mass, harmonic orthogonality, symmetry") {
    const GridSpec spec{1024, 1.0 / 64.0, 0.0};
    const Signal b = box_window(spec, 0.0, 1.0);
    CHECK(inner(b, b).real() == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(inner(b, b).imag() == 0.0);

    CHECK(std::abs(inner(harmonic(spec, 1), harmonic(spec, 2))) < 1e-12);

    Xorshift64Star rng(17);
    const Signal f = random_bandlimited(spec, 4.0, rng);
    const Signal g = random_bandlimited(spec, 4.0, rng);
    CHECK(inner(f, g) == std::conj(inner(g, f)));
    CHECK(inner(f, f).real() >= 0.0);

    Signal other(GridSpec{512, 1.0 / 64.0, 0.0});
    CHECK_THROWS_AS(inner(f, other), std::invalid_argument);
}

TEST_CASE("fourier: double transform is parity") {
    const GridSpec spec{256, 1.0 / 16.0, -8.0};
    Xorshift64Star rng(23);
    const Signal f = random_bandlimited(spec, 3.0, rng);
    const Signal ff = fourier(fourier(f));
    REQUIRE(ff.size() == f.size());
    CHECK(ff.dx == Catch::Approx(f.dx).epsilon(1e-14));
    const std::size_t L = spec.length;
    for (std::size_t j = 0; j < L; ++j) {
        // sample of ff at time t must equal f at -t (periodically)
        const std::size_t mirror = static_cast<std::size_t>(mod_positive(
            -static_cast<std::int64_t>(j) - 2 * round_to_int(f.t0 / f.dx), static_cast<std::int64_t>(L)));
        CHECK(std::abs(ff.samples[j] - f.samples[mirror]) < 1e-12);
    }
}

TEST_CASE("fourier: Gaussian self-duality and Plancherel") {
    const GridSpec spec{256, 1.0 / 16.0, -8.0};
    Signal g(spec);
    for (std::size_t j = 0; j < spec.length; ++j) {
        const double t = spec.time_at(j);
        g.samples[j] = std::exp(-pi * t * t);
    }
    const Signal gh = fourier(g);
    for (std::size_t j = 0; j < gh.size(); ++j) {
        const double nu = gh.time_at(j);
        if (std::abs(nu) <= 2.0) CHECK(std::abs(gh.samples[j] - std::exp(-pi * nu * nu)) < 1e-8);
    }
    CHECK(l2_norm(gh) == Catch::Approx(l2_norm(g)).epsilon(1e-12));
}

TEST_CASE("fourier intertwines translation and modulation") {
    const GridSpec spec{512, 1.0 / 32.0, 0.0};
    Xorshift64Star rng(31);
    const Signal f = random_bandlimited(spec, 4.0, rng);
    const double tau = 0.4375;  // on the grid: 14 dx
    const Signal lhs = fourier(translate(f, tau));
    // delay by tau multiplies the spectrum by e^{-2 pi i nu tau}, which is
    // exactly the modulation M_tau applied on the frequency grid
    const Signal rhs = modulate(fourier(f), tau);
    CHECK(max_abs_diff(lhs, rhs) < 1e-10);
}

TEST_CASE("lp_norm basics and nesting") {
    const std::vector<cplx> zero(5, cplx{0.0, 0.0});
    CHECK(lp_norm(zero, 1.0, 1.0) == 0.0);
    CHECK(lp_norm(zero, std::numeric_limits<double>::infinity(), 1.0) == 0.0);

    std::vector<cplx> onehot(5, cplx{0.0, 0.0});
    onehot[2] = {0.0, 1.0};
    for (double p : {1.0, 2.0, 3.5}) CHECK(lp_norm(onehot, p, 1.0) == Catch::Approx(1.0));

    const std::vector<cplx> pair{{1.0, 0.0}, {1.0, 0.0}};
    CHECK(lp_norm(pair, 2.0, 1.0) == Catch::Approx(std::sqrt(2.0)).epsilon(1e-15));

    CHECK_THROWS_AS(lp_norm(pair, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(lp_norm(pair, 2.0, 0.0), std::invalid_argument);

    Xorshift64Star rng(3);
    std::vector<cplx> v(64);
    for (auto& x : v) x = rng.normal_complex();
    CHECK(lp_norm(v, 3.0, 1.0) <= lp_norm(v, 2.0, 1.0));
    CHECK(lp_norm(v, 2.0, 1.0) <= lp_norm(v, 1.5, 1.0));
    CHECK(lp_norm(v, std::numeric_limits<double>::infinity(), 1.0) <= lp_norm(v, 3.0, 1.0));
}
