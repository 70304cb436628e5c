#pragma once

#include <complex>
#include <random>
#include <vector>

#include "paraword/symbols.hpp"

namespace paraword::testutil {

inline double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() % 1000000) / 1000000.0;
}

// Random polynomial with all zeros in the annulus 1.3 < |w| < 3, hence
// zero-free on the closed disc. Fractional-q gradient fields of such symbols
// stay smooth, which the quadrature-based identities rely on.
inline SymbolSpec random_zero_free_poly(std::mt19937_64& rng, int deg) {
    std::vector<std::complex<double>> coeffs{1.0};
    for (int k = 0; k < deg; ++k) {
        const double rad = 1.3 + 1.7 * unit_double(rng);
        const std::complex<double> w = std::polar(rad, 2.0 * M_PI * unit_double(rng));
        // multiply by (1 - z/w)
        std::vector<std::complex<double>> next(coeffs.size() + 1, 0.0);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            next[i] += coeffs[i];
            next[i + 1] -= coeffs[i] / w;
        }
        coeffs = std::move(next);
    }
    const double scale = 0.5 + 1.5 * unit_double(rng);
    for (auto& c : coeffs) c *= scale;
    return SymbolSpec::polynomial_d(coeffs);
}

// Unconstrained random polynomial (zeros may fall anywhere).
inline SymbolSpec random_poly(std::mt19937_64& rng, int deg) {
    std::vector<std::complex<double>> coeffs(deg + 1);
    for (auto& c : coeffs)
        c = {2.0 * unit_double(rng) - 1.0, 2.0 * unit_double(rng) - 1.0};
    coeffs[deg] += 0.3;
    return SymbolSpec::polynomial_d(coeffs);
}

}  // namespace paraword::testutil
