// Shared generators and small helpers for the unit tests.

#pragma once

#include <cmath>
#include <random>

#include "dmspin/linalg.hpp"

namespace test_support {

using dmspin::Complex;
using dmspin::linalg::CMatrix;

inline std::mt19937_64 make_rng(unsigned seed) { return std::mt19937_64(seed); }

inline CMatrix random_matrix(std::mt19937_64& rng, int dim) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    CMatrix m(dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) m(r, c) = Complex(uni(rng), uni(rng));
    }
    return m;
}

inline CMatrix random_hermitian(std::mt19937_64& rng, int dim) {
    const CMatrix a = random_matrix(rng, dim);
    return 0.5 * (a + a.adjoint());
}

// rho = A A† / tr(A A†): Hermitian, PSD, unit trace.
inline CMatrix random_density(std::mt19937_64& rng, int dim) {
    const CMatrix a = random_matrix(rng, dim);
    CMatrix rho = a * a.adjoint();
    rho *= Complex(1.0 / rho.trace().real(), 0.0);
    return rho;
}

// Haar-ish 2x2 unitary from explicit angles (exactly unitary).
inline CMatrix random_unitary2(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 2.0 * 3.141592653589793);
    const double alpha = uni(rng), beta = uni(rng), gamma = 0.5 * uni(rng);
    CMatrix u(2);
    u(0, 0) = std::polar(std::cos(gamma), alpha);
    u(0, 1) = std::polar(std::sin(gamma), beta);
    u(1, 0) = -std::polar(std::sin(gamma), -beta);
    u(1, 1) = std::polar(std::cos(gamma), -alpha);
    return u;
}

// Least-squares affine fit y = a x + b; returns max |residual|.
inline double affine_fit_residual(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        worst = std::max(worst, std::abs(y[i] - (slope * x[i] + intercept)));
    }
    return worst;
}

}  // namespace test_support
