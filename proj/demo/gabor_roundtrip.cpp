// Analyze a random band-limited signal against a painless tight window,
// resynthesize it, and report the roundtrip error and frame-energy ratio.
#include <iostream>

#include "modframe/gabor.hpp"
#include "modframe/probes.hpp"

int main() {
    using namespace modframe;
    const GridSpec grid{4096, 1.0 / 256.0, 0.0};  // period 16

    Xorshift64Star rng(1);
    const Signal f = random_bandlimited(grid, 8.0, rng);
    const Signal phi = make_tight_window(sin_bump(grid, 0.0, 1.0), 0.5);

    const GaborLattice lat = full_lattice(grid, 0.5);
    const CoeffGrid coeffs = analyze(f, phi, lat);
    const Signal back = synthesize(coeffs, phi);

    double err = 0.0;
    for (std::size_t j = 0; j < grid.length; ++j)
        err = std::max(err, std::abs(back.samples[j] - f.samples[j]));

    double energy = 0.0;
    for (const cplx& c : coeffs.entries) energy += std::norm(c);

    std::cout << "samples           " << grid.length << "\n"
              << "lattice           alpha=" << lat.alpha << " k_count=" << lat.k_count
              << " n in [" << lat.n_min << ", " << lat.n_max << "]\n"
              << "roundtrip error   " << err << "\n"
              << "coeff energy / ||f||^2 = " << energy / (l2_norm(f) * l2_norm(f)) << "\n";
    return err < 1e-10 ? 0 : 1;
}
