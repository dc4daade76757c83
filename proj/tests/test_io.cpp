#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "modframe/io.hpp"
#include "modframe/probes.hpp"

using namespace modframe;

TEST_CASE("signal json roundtrip") {
    const GridSpec spec{16, 0.125, -1.0};
    Xorshift64Star rng(8);
    Signal f(spec);
    for (auto& v : f.samples) v = rng.normal_complex();

    const Signal back = signal_from_json(signal_to_json(f));
    REQUIRE(back.size() == f.size());
    CHECK(back.dx == f.dx);
    CHECK(back.t0 == f.t0);
    for (std::size_t j = 0; j < f.size(); ++j) CHECK(back.samples[j] == f.samples[j]);

    json bad = signal_to_json(f);
    bad["L"] = 15;
    CHECK_THROWS_AS(signal_from_json(bad), std::invalid_argument);
    json missing = signal_to_json(f);
    missing.erase("dx");
    CHECK_THROWS(signal_from_json(missing));
}

TEST_CASE("signal csv layout") {
    const GridSpec spec{2, 0.5, 0.0};
    Signal f(spec);
    f.samples[0] = {1.0, -2.0};
    f.samples[1] = {0.25, 0.0};
    CHECK(signal_to_csv(f) == "# L=2 dx=0.5 t0=0\n1,-2\n0.25,0\n");
}

TEST_CASE("coefficient grid csv layout") {
    const GridSpec spec{64, 0.25, 0.0};
    const Signal box = box_window(spec, 0.0, 1.0);
    Signal f = modulate(translate(box, 1.0), 1.0);
    GaborLattice lat;
    lat.alpha = 1.0;
    lat.n_min = -1;
    lat.n_max = 1;
    lat.k_count = 16;
    const CoeffGrid c = analyze(f, box, lat);
    const std::string csv = coeffgrid_to_csv(c);
    CHECK(csv.rfind("# alpha=1 n_min=-1 n_max=1 k_count=16\n", 0) == 0);
    // one-hot atom: the (k=1, n=1) row carries 1, every other magnitude ~0
    CHECK(csv.find("\n1,1,") != std::string::npos);
    const std::size_t rows = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
    CHECK(rows == 1 + 16 * 3);
}

TEST_CASE("stft grid csv layout") {
    const GridSpec spec{64, 0.25, 0.0};
    const Signal psi = gaussian_window(spec, 8.0, 1.0);
    const PlaneSpec plane = PlaneSpec::for_grid(spec, 1.0, 1.0);
    const StftGrid g = stft(psi, psi, plane);
    const std::string csv = stftgrid_to_csv(g);
    CHECK(csv[0] == '#');
    CHECK(csv.find("dw=") != std::string::npos);
    const std::size_t rows = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
    CHECK(rows == 1 + plane.x_count * plane.w_count);
}

TEST_CASE("norm report json roundtrip") {
    const GridSpec spec{256, 1.0 / 16.0, 0.0};
    Xorshift64Star rng(19);
    const Signal f = random_bandlimited(spec, 4.0, rng);
    const NormReport r = mp_norm_box(f, 2.5, 64);
    const NormReport back = norm_report_from_json(norm_report_to_json(r));
    CHECK(back.p == r.p);
    CHECK(back.p_conj == r.p_conj);
    CHECK(back.value == r.value);
    CHECK(back.method == r.method);
    CHECK(back.truncation_tail == r.truncation_tail);

    json j = norm_report_to_json(r);
    j["method"] = "mystery";
    CHECK_THROWS_AS(norm_report_from_json(j), std::invalid_argument);
}

TEST_CASE("piecewise json roundtrip") {
    const PiecewiseConstant r2 = rademacher(2);
    const PiecewiseConstant back = piecewise_from_json(piecewise_to_json(r2));
    REQUIRE(back.values.size() == r2.values.size());
    CHECK(back.breakpoints == r2.breakpoints);
    for (std::size_t i = 0; i < back.values.size(); ++i) CHECK(back.values[i] == r2.values[i]);

    json bad = piecewise_to_json(r2);
    bad["breakpoints"] = std::vector<double>{0.0, 0.5};  // count mismatch
    CHECK_THROWS_AS(piecewise_from_json(bad), std::invalid_argument);
}

TEST_CASE("translate set text roundtrip") {
    TranslateSet lam;
    lam.lambdas = {0.0, 0.125, 2.0, 37.5};
    const TranslateSet back = translate_set_from_text(translate_set_to_text(lam));
    CHECK(back.lambdas == lam.lambdas);

    CHECK(translate_set_from_text("# comment\n1\n\n2.5\n").lambdas == std::vector<double>{1.0, 2.5});
    CHECK_THROWS_AS(translate_set_from_text("2\n1\n"), std::invalid_argument);
    CHECK_THROWS(translate_set_from_text("not-a-number\n"));
}

TEST_CASE("density and section reports serialize") {
    TranslateSet ints;
    for (int k = 1; k <= 64; ++k) ints.lambdas.push_back(static_cast<double>(k));
    const json dj = density_report_to_json(effective_density(ints, dyadic_family(0, 5)));
    CHECK(dj.at("ratios").size() == 6);
    CHECK(dj.at("witness_C").get<double>() == Catch::Approx(1.0));
    CHECK(dj.at("family_divergent").get<bool>());

    SectionReport sr;
    sr.N = 4;
    sr.sigma_min = 0.5;
    sr.sigma_max = 2.0;
    sr.residuals["probe"] = 0.25;
    const json sj = section_report_to_json(sr);
    CHECK(sj.at("N").get<std::size_t>() == 4);
    CHECK(sj.at("residuals").at("probe").get<double>() == 0.25);
}

TEST_CASE("bisequence csv roundtrip") {
    BiSequence c;
    c.values = {{1.0, 2.0}, {0.0, 0.0}, {-0.5, 3.0}};
    const std::string csv = bisequence_to_csv(c);
    CHECK(csv == "-1,1,2\n0,0,0\n1,-0.5,3\n");
    const BiSequence back = bisequence_from_csv(csv);
    REQUIRE(back.values.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(back.values[i] == c.values[i]);

    CHECK_THROWS_AS(bisequence_from_csv("0,1,0\n1,2,0\n"), std::invalid_argument);   // even count
    CHECK_THROWS_AS(bisequence_from_csv("-1,1,0\n1,0,0\n0,2,0\n"), std::invalid_argument);  // out of order
    CHECK_THROWS_AS(bisequence_from_csv("-1,1\n0,0,0\n1,0,0\n"), std::invalid_argument);    // short row
}

TEST_CASE("round numbers survive file io exactly") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "modframe_io_test.json";
    const GridSpec spec{8, 1.0 / 3.0, 0.1};  // non-dyadic spacing stresses precision
    Xorshift64Star rng(99);
    Signal f(spec);
    for (auto& v : f.samples) v = rng.normal_complex();
    save_json(path.string(), signal_to_json(f));
    const Signal back = signal_from_json(load_json(path.string()));
    CHECK(back.dx == f.dx);
    for (std::size_t j = 0; j < f.size(); ++j) CHECK(back.samples[j] == f.samples[j]);
    std::remove(path.string().c_str());

    CHECK_THROWS_AS(load_json("/nonexistent/modframe.json"), std::runtime_error);
}
