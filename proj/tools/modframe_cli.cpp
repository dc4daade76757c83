#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "modframe/verify.hpp"

namespace mf = modframe;

namespace {

struct RunConfig {
    mf::GridSpec grid{65536, 1.0 / 1024.0, 0.0};
    std::int64_t n_cap = 512;
    std::uint64_t seed = 0xC0FFEE;
    double w_max = 16.0;
    double x_step = 0.25;
    int threads = 1;
};

void apply_defaults_block(RunConfig& cfg, const mf::json& defaults) {
    for (const auto& [key, value] : defaults.items()) {
        if (key == "n_cap") {
            const auto v = value.get<std::int64_t>();
            if (v < 1) throw std::invalid_argument("config: n_cap must be >= 1");
            cfg.n_cap = v;
        } else if (key == "seed") {
            cfg.seed = value.get<std::uint64_t>();
        } else if (key == "w_max") {
            const auto v = value.get<double>();
            if (!(v > 0.0)) throw std::invalid_argument("config: w_max must be > 0");
            cfg.w_max = v;
        } else if (key == "x_step") {
            const auto v = value.get<double>();
            if (!(v > 0.0)) throw std::invalid_argument("config: x_step must be > 0");
            cfg.x_step = v;
        } else {
            throw std::invalid_argument("config: unknown key \"defaults." + key + "\"");
        }
    }
}

RunConfig parse_config(const std::string& path) {
    RunConfig cfg;
    if (path.empty()) return cfg;
    const mf::json j = mf::load_json(path);
    for (const auto& [key, value] : j.items()) {
        if (key == "grid") {
            for (const auto& [gk, gv] : value.items()) {
                if (gk == "L")
                    cfg.grid.length = gv.get<std::size_t>();
                else if (gk == "dx")
                    cfg.grid.dx = gv.get<double>();
                else if (gk == "t0")
                    cfg.grid.t0 = gv.get<double>();
                else
                    throw std::invalid_argument("config: unknown key \"grid." + gk + "\"");
            }
        } else if (key == "defaults") {
            apply_defaults_block(cfg, value);
        } else {
            throw std::invalid_argument("config: unknown key \"" + key + "\"");
        }
    }
    cfg.grid.validate();
    return cfg;
}

int read_thread_cap() {
    const char* env = std::getenv("MODFRAME_THREADS");
    if (!env) return 1;
    const int v = std::atoi(env);
    if (v < 1) throw std::invalid_argument("MODFRAME_THREADS must be a positive integer");
    return v;
}

void write_or_print(const std::string& out, const std::string& text) {
    if (out.empty())
        std::cout << text;
    else
        mf::detail::write_text(out, text);
}

mf::Signal load_signal(const std::string& path) { return mf::signal_from_json(mf::load_json(path)); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"modframe: discrete time-frequency analysis toolbox"};
    app.require_subcommand(1);

    std::string config_path, out_path, input_path, window_path, shifts_path, only;
    double p = 2.0;
    std::int64_t n_cap = -1;
    std::uint64_t seed = 0;
    bool seed_set = false, n_cap_set = false;
    std::size_t grid_l = 0;
    double grid_dx = 0.0;

    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", out_path, "output artifact path (stdout if omitted)");
    app.add_option("--seed", seed, "master RNG seed")->each([&](const std::string&) { seed_set = true; });
    app.add_option("--only", only, "run a single named verification check");
    app.add_option("--p", p, "Lp exponent");
    app.add_option("--n-cap", n_cap, "coefficient truncation cap")->each([&](const std::string&) {
        n_cap_set = true;
    });
    app.add_option("--grid-l", grid_l, "grid length L");
    app.add_option("--grid-dx", grid_dx, "grid spacing dx");

    auto* stft_cmd = app.add_subcommand("stft", "short-time Fourier transform to CSV");
    stft_cmd->add_option("--input", input_path, "Signal JSON")->required();
    stft_cmd->add_option("--window", window_path, "window Signal JSON (default: unit Gaussian)");

    auto* gabor_cmd = app.add_subcommand("gabor", "Gabor coefficients to CSV");
    gabor_cmd->add_option("--input", input_path, "Signal JSON")->required();
    gabor_cmd->add_option("--window", window_path, "window Signal JSON (default: box on [0,1))");
    double alpha = 1.0;
    gabor_cmd->add_option("--alpha", alpha, "time step of the lattice");

    auto* norm_cmd = app.add_subcommand("norm", "modulation norm surrogate to JSON");
    norm_cmd->add_option("--input", input_path, "Signal JSON")->required();
    std::string method = "box";
    norm_cmd->add_option("--method", method, "box or stft")->check(CLI::IsMember({"box", "stft"}));

    auto* rad_cmd = app.add_subcommand("rademacher", "Rademacher functions and coefficients");
    int rad_n = 1;
    bool check_closed_form = false;
    rad_cmd->add_option("--n", rad_n, "Rademacher index N");
    rad_cmd->add_flag("--check-closed-form", check_closed_form,
                      "tabulate exact vs closed-form coefficients");

    auto* hil_cmd = app.add_subcommand("hilbert", "discrete Hilbert transform of a BiSequence CSV");
    hil_cmd->add_option("--input", input_path, "BiSequence CSV");
    std::int64_t hil_length = 4097, hil_trials = 100;
    bool hil_estimate = false;
    hil_cmd->add_flag("--norm-estimate", hil_estimate, "run the random operator-norm harness instead");
    hil_cmd->add_option("--length", hil_length, "sequence length for --norm-estimate (odd)");
    hil_cmd->add_option("--trials", hil_trials, "trial count for --norm-estimate");

    auto* wil_cmd = app.add_subcommand("wilson", "Wilson bump sequence report");
    std::int64_t wil_n_max = 16;
    wil_cmd->add_option("--n-max", wil_n_max, "largest modulation index");

    auto* tra_cmd = app.add_subcommand("translates", "finite-section spectrum of a translate system");
    tra_cmd->add_option("--window", window_path, "window Signal JSON")->required();
    tra_cmd->add_option("--shifts", shifts_path, "shift file, one value per line")->required();
    std::size_t section_n = 8;
    std::string probe_path;
    tra_cmd->add_option("--n", section_n, "section size N");
    tra_cmd->add_option("--probe", probe_path, "probe Signal JSON for a completeness residual");

    auto* den_cmd = app.add_subcommand("density", "effective-density report for a shift set");
    den_cmd->add_option("--shifts", shifts_path, "shift file, one value per line")->required();
    int dy_lo = 0, dy_hi = 9;
    den_cmd->add_option("--dyadic-lo", dy_lo, "first dyadic exponent");
    den_cmd->add_option("--dyadic-hi", dy_hi, "last dyadic exponent");

    auto* ver_cmd = app.add_subcommand("verify", "run the full verification suite");
    bool quick = false;
    ver_cmd->add_flag("--quick", quick, "reduced trial counts (same checks)");

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = parse_config(config_path);
        cfg.threads = read_thread_cap();
        if (seed_set) cfg.seed = seed;
        if (n_cap_set) {
            if (n_cap < 1) throw std::invalid_argument("n_cap must be >= 1");
            cfg.n_cap = n_cap;
        }
        if (grid_l != 0) cfg.grid.length = grid_l;
        if (grid_dx != 0.0) cfg.grid.dx = grid_dx;
        cfg.grid.validate();

        if (*stft_cmd) {
            const mf::Signal f = load_signal(input_path);
            const mf::Signal psi = window_path.empty()
                                       ? mf::gaussian_window(f.grid(), f.period() / 2.0, 1.0)
                                       : load_signal(window_path);
            const mf::PlaneSpec plane = mf::PlaneSpec::for_grid(f.grid(), cfg.w_max, cfg.x_step);
            write_or_print(out_path, mf::stftgrid_to_csv(mf::stft(f, psi, plane)));
        } else if (*gabor_cmd) {
            const mf::Signal f = load_signal(input_path);
            const mf::Signal w = window_path.empty() ? mf::box_window(f.grid(), 0.0, 1.0)
                                                     : load_signal(window_path);
            const mf::GaborLattice lat = mf::full_lattice(f.grid(), alpha);
            write_or_print(out_path, mf::coeffgrid_to_csv(mf::analyze(f, w, lat)));
        } else if (*norm_cmd) {
            const mf::Signal f = load_signal(input_path);
            mf::NormReport rep;
            if (method == "box") {
                rep = mf::mp_norm_box(f, p, cfg.n_cap);
            } else {
                const mf::Signal psi = mf::gaussian_window(f.grid(), f.period() / 2.0, 1.0);
                rep = mf::mp_norm_stft(f, psi, p, mf::PlaneSpec::for_grid(f.grid(), cfg.w_max, cfg.x_step));
            }
            write_or_print(out_path, mf::norm_report_to_json(rep).dump(2) + "\n");
        } else if (*rad_cmd) {
            if (check_closed_form) {
                const mf::PiecewiseConstant rn = mf::rademacher(rad_n);
                double max_diff = 0.0;
                std::ostringstream os;
                os << "k,exact_re,exact_im,closed_re,closed_im,abs_diff\n";
                for (std::int64_t k = -64; k <= 64; ++k) {
                    const mf::cplx e = mf::exact_fourier_coeff(rn, k);
                    const mf::cplx c = mf::rademacher_coeff_closed_form(rad_n, k);
                    const double d = std::abs(e - c);
                    max_diff = std::max(max_diff, d);
                    os << k << "," << e.real() << "," << e.imag() << "," << c.real() << ","
                       << c.imag() << "," << d << "\n";
                }
                write_or_print(out_path, os.str());
                std::cerr << "max |exact - closed_form| = " << max_diff << "\n";
                return max_diff <= 1e-12 ? 0 : 1;
            }
            write_or_print(out_path, mf::piecewise_to_json(mf::rademacher(rad_n)).dump(2) + "\n");
        } else if (*hil_cmd) {
            if (hil_estimate) {
                const double est = mf::hilbert_norm_estimate(p, hil_length, hil_trials, cfg.seed);
                write_or_print(out_path, mf::json{{"p", p},
                                                  {"length", hil_length},
                                                  {"trials", hil_trials},
                                                  {"estimate", est}}
                                                 .dump(2) +
                                             "\n");
            } else {
                if (input_path.empty())
                    throw std::invalid_argument("hilbert: --input required unless --norm-estimate");
                const mf::BiSequence c = mf::bisequence_from_csv(mf::detail::read_text(input_path));
                write_or_print(out_path, mf::bisequence_to_csv(mf::discrete_hilbert(c)));
            }
        } else if (*wil_cmd) {
            mf::Signal phi = mf::sin_bump(cfg.grid, 0.0, 1.0);
            for (auto& v : phi.samples) v *= std::sqrt(2.0);
            const auto [bumps, rep] = mf::wilson_bumps(phi, static_cast<int>(wil_n_max));
            write_or_print(out_path, mf::json{{"n_max", wil_n_max},
                                              {"gram_deviation", rep.gram_deviation},
                                              {"m1_sup", rep.m1_sup},
                                              {"m1_base", rep.m1_base}}
                                             .dump(2) +
                                         "\n");
        } else if (*tra_cmd) {
            const mf::Signal g = load_signal(window_path);
            const mf::TranslateSet lam = mf::translate_set_from_text(mf::detail::read_text(shifts_path));
            mf::SectionReport rep = mf::section_spectrum(g, lam, section_n, cfg.n_cap);
            if (!probe_path.empty())
                rep.residuals["probe"] =
                    mf::completeness_residual(g, lam, section_n, load_signal(probe_path), cfg.n_cap);
            write_or_print(out_path, mf::section_report_to_json(rep).dump(2) + "\n");
        } else if (*den_cmd) {
            const mf::TranslateSet lam = mf::translate_set_from_text(mf::detail::read_text(shifts_path));
            const mf::DensityReport rep = mf::effective_density(lam, mf::dyadic_family(dy_lo, dy_hi));
            write_or_print(out_path, mf::density_report_to_json(rep).dump(2) + "\n");
        } else if (*ver_cmd) {
            mf::VerifyConfig vc;
            vc.grid = cfg.grid;
            vc.n_cap = cfg.n_cap;
            vc.seed = cfg.seed;
            vc.only = only;
            vc.quick = quick;
            const mf::VerifyReport rep = mf::run_verify(vc);
            std::cout << rep.table();
            if (!out_path.empty()) mf::save_json(out_path, rep.to_json(true));
            return rep.all_pass() ? 0 : 1;
        }
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
