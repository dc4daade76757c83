#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "modframe/hilbert.hpp"
#include "modframe/special.hpp"
#include "modframe/translates.hpp"

namespace modframe {

using nlohmann::json;

namespace detail {

inline json complex_pair(const cplx& v) { return json::array({v.real(), v.imag()}); }

inline cplx pair_complex(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace detail

inline json signal_to_json(const Signal& f) {
    json samples = json::array();
    for (const cplx& v : f.samples) samples.push_back(detail::complex_pair(v));
    return json{{"L", f.size()}, {"dx", f.dx}, {"t0", f.t0}, {"samples", std::move(samples)}};
}

inline Signal signal_from_json(const json& j) {
    Signal f;
    const auto L = j.at("L").get<std::size_t>();
    f.dx = j.at("dx").get<double>();
    f.t0 = j.at("t0").get<double>();
    const json& samples = j.at("samples");
    if (samples.size() != L)
        throw std::invalid_argument("Signal: sample count " + std::to_string(samples.size()) +
                                    " does not match L=" + std::to_string(L));
    f.samples.reserve(L);
    for (const json& s : samples) f.samples.push_back(detail::pair_complex(s));
    f.validate();
    return f;
}

inline std::string signal_to_csv(const Signal& f) {
    std::ostringstream os;
    os << "# L=" << f.size() << " dx=" << detail::format_double(f.dx)
       << " t0=" << detail::format_double(f.t0) << "\n";
    for (const cplx& v : f.samples)
        os << detail::format_double(v.real()) << "," << detail::format_double(v.imag()) << "\n";
    return os.str();
}

inline std::string coeffgrid_to_csv(const CoeffGrid& c) {
    std::ostringstream os;
    os << "# alpha=" << detail::format_double(c.lattice.alpha) << " n_min=" << c.lattice.n_min
       << " n_max=" << c.lattice.n_max << " k_count=" << c.lattice.k_count << "\n";
    for (std::size_t k = 0; k < c.lattice.k_count; ++k)
        for (std::int64_t n = c.lattice.n_min; n <= c.lattice.n_max; ++n) {
            const cplx& v = c.at(k, n);
            os << k << "," << n << "," << detail::format_double(v.real()) << ","
               << detail::format_double(v.imag()) << "\n";
        }
    return os.str();
}

inline std::string stftgrid_to_csv(const StftGrid& g) {
    std::ostringstream os;
    os << "# dx=" << detail::format_double(g.plane.dx_tf) << " dw=" << detail::format_double(g.plane.dw_tf)
       << " x0=" << detail::format_double(g.plane.x0) << " w0=" << detail::format_double(g.plane.w0)
       << "\n";
    for (std::size_t i = 0; i < g.plane.x_count; ++i)
        for (std::size_t j = 0; j < g.plane.w_count; ++j) {
            const cplx& v = g.values[i * g.plane.w_count + j];
            os << i << "," << j << "," << detail::format_double(v.real()) << ","
               << detail::format_double(v.imag()) << "\n";
        }
    return os.str();
}

inline json norm_report_to_json(const NormReport& r) {
    return json{{"p", r.p},
                {"p_conj", r.p_conj},
                {"value", r.value},
                {"method", to_string(r.method)},
                {"truncation_tail", r.truncation_tail}};
}

inline NormReport norm_report_from_json(const json& j) {
    NormReport r;
    r.p = j.at("p").get<double>();
    r.p_conj = j.at("p_conj").get<double>();
    r.value = j.at("value").get<double>();
    r.truncation_tail = j.at("truncation_tail").get<double>();
    const std::string m = j.at("method").get<std::string>();
    if (m == "stft")
        r.method = NormMethod::stft;
    else if (m == "box")
        r.method = NormMethod::box;
    else
        throw std::invalid_argument("NormReport: unknown method " + m);
    return r;
}

inline json piecewise_to_json(const PiecewiseConstant& pc) {
    json values = json::array();
    for (const cplx& v : pc.values) values.push_back(detail::complex_pair(v));
    return json{{"breakpoints", pc.breakpoints}, {"values", std::move(values)}};
}

inline PiecewiseConstant piecewise_from_json(const json& j) {
    PiecewiseConstant pc;
    pc.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    for (const json& v : j.at("values")) pc.values.push_back(detail::pair_complex(v));
    pc.validate();
    return pc;
}

inline std::string translate_set_to_text(const TranslateSet& lam) {
    std::ostringstream os;
    for (double l : lam.lambdas) os << detail::format_double(l) << "\n";
    return os.str();
}

inline TranslateSet translate_set_from_text(const std::string& text) {
    TranslateSet lam;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::size_t pos = 0;
        const double v = std::stod(line, &pos);
        lam.lambdas.push_back(v);
    }
    lam.validate();
    return lam;
}

inline json density_report_to_json(const DensityReport& r) {
    json intervals = json::array();
    for (const auto& [a, b] : r.intervals) intervals.push_back(json::array({a, b}));
    return json{{"intervals", std::move(intervals)},
                {"ratios", r.ratios},
                {"divergence_partial", r.divergence_partial},
                {"witness_C", r.witness_C},
                {"family_divergent", r.family_divergent}};
}

inline json section_report_to_json(const SectionReport& r) {
    return json{{"N", r.N},
                {"sigma_min", r.sigma_min},
                {"sigma_max", r.sigma_max},
                {"residuals", r.residuals}};
}

inline std::string bisequence_to_csv(const BiSequence& c) {
    std::ostringstream os;
    const std::int64_t M = c.half_width();
    for (std::int64_t m = -M; m <= M; ++m) {
        const cplx& v = c.at(m);
        os << m << "," << detail::format_double(v.real()) << "," << detail::format_double(v.imag())
           << "\n";
    }
    return os.str();
}

inline BiSequence bisequence_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<std::pair<std::int64_t, cplx>> rows;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string fields[3];
        for (int i = 0; i < 3; ++i)
            if (!std::getline(ls, fields[i], ',')) throw std::invalid_argument("BiSequence: expected m,re,im row");
        rows.emplace_back(std::stoll(fields[0]), cplx{std::stod(fields[1]), std::stod(fields[2])});
    }
    if (rows.empty() || rows.size() % 2 == 0)
        throw std::invalid_argument("BiSequence: need an odd number of rows for indices -M..M");
    const std::int64_t M = static_cast<std::int64_t>(rows.size() / 2);
    BiSequence c;
    c.values.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].first != static_cast<std::int64_t>(i) - M)
            throw std::invalid_argument("BiSequence: rows must cover -M..M in order");
        c.values[i] = rows[i].second;
    }
    return c;
}

inline void save_json(const std::string& path, const json& j) { detail::write_text(path, j.dump(2) + "\n"); }

inline json load_json(const std::string& path) { return json::parse(detail::read_text(path)); }

}  // namespace modframe
