// Minimal usage example: enumerate the low spectrum of the 2D operator at
// s = 3/4 on the pi-cube, print it as CSV, and compare the counting function
// with the Weyl estimate and the Polya bound.

#include <iostream>
#include <numbers>

#include "fracspec/bounds.hpp"
#include "fracspec/io.hpp"
#include "fracspec/spectrum.hpp"

int main() {
    using namespace fracspec;

    SpectralParams params;
    params.d = 2;
    params.s = 0.75;
    params.L = std::numbers::pi;

    SpectrumSlice spectrum = enumerate_smallest(params, 12);
    io::write_spectrum_csv(std::cout, spectrum);

    const DomainSpec cube = DomainSpec::hypercube(params);
    std::cout << "\nE, N(E), weyl_estimate, polya_ok\n";
    for (double E : {5.0, 20.0, 80.0, 320.0}) {
        const std::uint64_t n = counting_function(params, E);
        const double weyl = weyl_counting_estimate(cube, params.s, E);
        std::cout << E << ", " << n << ", " << weyl << ", "
                  << (static_cast<double>(n) <= weyl * (1.0 + 1e-9) ? "yes" : "no") << "\n";
    }
    return 0;
}
