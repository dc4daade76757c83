#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>

#include "modframe/io.hpp"
#include "modframe/probes.hpp"

using namespace modframe;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / "modframe_cli_test";
    fs::create_directories(dir);
    return dir;
}

RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("MODFRAME_CLI");
    REQUIRE(bin != nullptr);
    const fs::path outp = scratch() / "stdout.txt";
    const fs::path errp = scratch() / "stderr.txt";
    const std::string cmd =
        std::string("\"") + bin + "\" " + args + " > " + outp.string() + " 2> " + errp.string();
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.code = rc == -1 ? -1 : (rc & 0x7f) == 0 ? (rc >> 8) & 0xff : -1;
    r.out = detail::read_text(outp.string());
    r.err = detail::read_text(errp.string());
    return r;
}

std::string write_signal(const std::string& name, const Signal& f) {
    const fs::path p = scratch() / name;
    save_json(p.string(), signal_to_json(f));
    return p.string();
}

const GridSpec kGrid{256, 1.0 / 16.0, 0.0};  // P = 16

}  // namespace

TEST_CASE("cli requires a subcommand") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
}

TEST_CASE("cli rademacher emits the step function and its coefficient table") {
    const RunResult r = run_cli("rademacher --n 2");
    REQUIRE(r.code == 0);
    const PiecewiseConstant pc = piecewise_from_json(json::parse(r.out));
    REQUIRE(pc.values.size() == 4);
    CHECK(pc.values[0] == cplx{1.0, 0.0});
    CHECK(pc.values[1] == cplx{-1.0, 0.0});

    const RunResult t = run_cli("rademacher --n 3 --check-closed-form");
    CHECK(t.code == 0);
    CHECK(t.out.rfind("k,exact_re", 0) == 0);
    CHECK(std::count(t.out.begin(), t.out.end(), '\n') == 1 + 129);
    CHECK(t.err.find("max |exact - closed_form|") != std::string::npos);

    CHECK(run_cli("rademacher --n 30").code == 1);  // length_error is not a usage error
}

TEST_CASE("cli norm reports match the library") {
    Xorshift64Star rng(55);
    const Signal f = random_bandlimited(kGrid, 4.0, rng);
    const std::string path = write_signal("f.json", f);

    const RunResult r = run_cli("norm --input " + path + " --p 2 --n-cap 64");
    REQUIRE(r.code == 0);
    const NormReport rep = norm_report_from_json(json::parse(r.out));
    CHECK(rep.method == NormMethod::box);
    CHECK(std::abs(rep.value - mp_norm_box(f, 2.0, 64).value) < 1e-14);

    CHECK(run_cli("norm --input " + path + " --p 0.5").code == 2);
    CHECK(run_cli("norm --input " + path + " --n-cap 0").code == 2);
    CHECK(run_cli("norm --input " + path + " --method nonsense").code == 2);
    CHECK(run_cli("norm --input /nonexistent.json").code == 1);
}

TEST_CASE("cli config file: defaults apply and unknown keys are rejected") {
    Xorshift64Star rng(56);
    const Signal f = random_bandlimited(kGrid, 4.0, rng);
    const std::string sig = write_signal("g.json", f);

    const fs::path good = scratch() / "good.json";
    detail::write_text(good.string(), R"({"defaults": {"n_cap": 32, "seed": 7}})");
    CHECK(run_cli("norm --input " + sig + " --config " + good.string()).code == 0);

    const fs::path bad = scratch() / "bad.json";
    detail::write_text(bad.string(), R"({"defaults": {"n_caps": 32}})");
    const RunResult r = run_cli("norm --input " + sig + " --config " + bad.string());
    CHECK(r.code == 2);
    CHECK(r.err.find("unknown key \"defaults.n_caps\"") != std::string::npos);

    const fs::path neg = scratch() / "neg.json";
    detail::write_text(neg.string(), R"({"defaults": {"n_cap": -1}})");
    CHECK(run_cli("norm --input " + sig + " --config " + neg.string()).code == 2);
}

TEST_CASE("cli gabor and stft emit csv grids") {
    const Signal box = box_window(kGrid, 0.0, 1.0);
    const std::string path = write_signal("box.json", box);

    const RunResult g = run_cli("gabor --input " + path + " --alpha 1");
    REQUIRE(g.code == 0);
    CHECK(g.out.rfind("# alpha=1 ", 0) == 0);
    CHECK(std::count(g.out.begin(), g.out.end(), '\n') == 1 + 16 * 16);  // k_count * S

    const RunResult s = run_cli("stft --input " + path);
    REQUIRE(s.code == 0);
    CHECK(s.out[0] == '#');
    CHECK(s.out.find("dw=") != std::string::npos);
}

TEST_CASE("cli hilbert transforms a csv and estimates the operator norm") {
    const fs::path in = scratch() / "seq.csv";
    detail::write_text(in.string(), "-2,0,0\n-1,0,0\n0,1,0\n1,0,0\n2,0,0\n");
    const RunResult r = run_cli("hilbert --input " + in.string());
    REQUIRE(r.code == 0);
    const BiSequence h = bisequence_from_csv(r.out);
    CHECK(std::abs(h.at(1) - cplx{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(h.at(-2) + cplx{0.5, 0.0}) < 1e-12);

    const std::string est_args = "hilbert --norm-estimate --length 129 --trials 5 --p 2 --seed 11";
    const RunResult a = run_cli(est_args);
    REQUIRE(a.code == 0);
    const json ja = json::parse(a.out);
    CHECK(ja.at("estimate").get<double>() <= pi + 1e-9);
    CHECK(run_cli(est_args).out == a.out);  // same seed, same bytes

    CHECK(run_cli("hilbert").code == 2);                               // no input, no estimate
    CHECK(run_cli("hilbert --norm-estimate --length 128").code == 2);  // even length
}

TEST_CASE("cli translates and density read shift files") {
    const std::string win = write_signal("win.json", box_window(kGrid, 0.0, 1.0));
    const fs::path shifts = scratch() / "shifts.txt";
    std::string text = "# integer shifts\n";
    for (int k = 0; k < 8; ++k) text += std::to_string(k) + "\n";
    detail::write_text(shifts.string(), text);

    const RunResult t =
        run_cli("translates --window " + win + " --shifts " + shifts.string() + " --n 8 --n-cap 8");
    REQUIRE(t.code == 0);
    const json jt = json::parse(t.out);
    CHECK(jt.at("sigma_min").get<double>() == Catch::Approx(1.0).margin(1e-10));
    CHECK(jt.at("sigma_max").get<double>() == Catch::Approx(1.0).margin(1e-10));

    const RunResult probed = run_cli("translates --window " + win + " --shifts " + shifts.string() +
                                     " --n 8 --n-cap 8 --probe " + win);
    REQUIRE(probed.code == 0);
    CHECK(json::parse(probed.out).at("residuals").at("probe").get<double>() <= 1e-10);

    const fs::path dens_shifts = scratch() / "dens.txt";
    std::string dens_text;
    for (int k = 1; k <= 64; ++k) dens_text += std::to_string(k) + "\n";
    detail::write_text(dens_shifts.string(), dens_text);
    const RunResult d =
        run_cli("density --shifts " + dens_shifts.string() + " --dyadic-lo 0 --dyadic-hi 5");
    REQUIRE(d.code == 0);
    const json jd = json::parse(d.out);
    CHECK(jd.at("witness_C").get<double>() == Catch::Approx(1.0));
    CHECK(jd.at("family_divergent").get<bool>());
}

TEST_CASE("cli verify runs a named check and writes a report artifact") {
    const std::string grid_args = " --grid-l 4096 --grid-dx 0.00390625 --n-cap 128";
    const fs::path report = scratch() / "report.json";
    const RunResult r =
        run_cli("verify --quick --only box-parseval --out " + report.string() + grid_args);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("box-parseval") != std::string::npos);
    CHECK(r.out.find("PASS") != std::string::npos);
    const json j = load_json(report.string());
    REQUIRE(j.at("checks").size() == 1);
    CHECK(j.at("checks")[0].at("name").get<std::string>() == "box-parseval");
    CHECK(j.at("checks")[0].at("status").get<std::string>() == "pass");
    CHECK(j.at("checks")[0].contains("runtime_ms"));

    CHECK(run_cli("verify --only no-such-check" + grid_args).code == 2);
}
