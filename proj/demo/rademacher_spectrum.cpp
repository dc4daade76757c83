// Print the nonzero Fourier coefficients of a Rademacher function three ways:
// exact integration, the closed form, and sampled quadrature on a fine grid.
#include <iostream>

#include "modframe/special.hpp"

int main(int argc, char** argv) {
    using namespace modframe;
    const int N = argc > 1 ? std::atoi(argv[1]) : 3;

    const PiecewiseConstant rn = rademacher(N);
    const GridSpec grid{1 << 14, 1.0 / (1 << 14), 0.0};
    const Signal sampled = piecewise_to_signal(rn, grid);

    std::cout << "R_" << N << ": nonzero coefficients live at k = j * 2^" << (N - 1)
              << " for odd j\n";
    std::cout << "k\t|exact|\t\t|closed|\t|sampled|\n";
    for (std::int64_t k = 1; k <= (std::int64_t{1} << (N + 2)); ++k) {
        const cplx e = exact_fourier_coeff(rn, k);
        if (std::abs(e) < 1e-14) continue;
        std::cout << k << "\t" << std::abs(e) << "\t" << std::abs(rademacher_coeff_closed_form(N, k))
                  << "\t" << std::abs(sampled_fourier_coeff(sampled, k)) << "\n";
    }
    std::cout << "L2 mass recovered by |j| <= 4096: " << rademacher_norm_ratio(N, 2.0, 4096) << "\n";
    return 0;
}
