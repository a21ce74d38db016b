#include "dmspin/concurrence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dmspin/model.hpp"

namespace dmspin::concurrence {

namespace {

const CMatrix& spin_flip_operator() {
    static const CMatrix s = linalg::kron(model::sigma_y(), model::sigma_y());
    return s;
}

// Indices outside the diagonal and anti-diagonal.
constexpr int kForbidden[8][2] = {{0, 1}, {0, 2}, {1, 3}, {2, 3},
                                  {1, 0}, {2, 0}, {3, 1}, {3, 2}};

}  // namespace

void validate_density_matrix(const CMatrix& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("density matrix: must be 4x4");
    if (!rho.is_finite()) throw std::invalid_argument("density matrix: non-finite entries");
    if (!rho.is_hermitian(1e-12)) throw std::invalid_argument("density matrix: not Hermitian");
    if (std::abs(rho.trace() - Complex(1.0)) > 1e-12) {
        throw std::invalid_argument("density matrix: trace != 1");
    }
    const auto eig = linalg::hermitian_eig(rho);
    if (eig.eigenvalues.front() < -1e-10) {
        throw std::invalid_argument("density matrix: negative eigenvalue");
    }
}

bool is_x_structured(const CMatrix& rho, double tol) {
    for (const auto& idx : kForbidden) {
        if (std::abs(rho(idx[0], idx[1])) > tol) return false;
    }
    return true;
}

double wootters_concurrence(const CMatrix& rho) {
    validate_density_matrix(rho);
    const CMatrix& s = spin_flip_operator();
    const CMatrix root = linalg::psd_sqrt(rho);

    // The lambda_i are the singular values of K = sqrt(rho) S conj(sqrt(rho));
    // K K† is similar to rho S rho* S. Taking them unsquared from the
    // Hermitian embedding [[0, K],[K†, 0]] (eigenvalues ±lambda_i) keeps
    // near-zero lambdas at machine absolute accuracy, where eigendecomposing
    // the squared product would leave sqrt(rounding) ~ 1e-8 residue.
    const CMatrix k = root * s * root.conjugate();
    CMatrix embedded(8);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            embedded(r, c + 4) = k(r, c);
            embedded(r + 4, c) = std::conj(k(c, r));
        }
    }
    const auto eig = linalg::hermitian_eig(embedded);

    std::array<double, 4> lambda{};  // the four nonnegative eigenvalues, descending
    for (int i = 0; i < 4; ++i) lambda[i] = std::max(0.0, eig.eigenvalues[7 - i]);
    return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

double xstate_concurrence(const CMatrix& rho) {
    validate_density_matrix(rho);
    if (!is_x_structured(rho)) {
        throw std::invalid_argument("xstate_concurrence: input is not X-structured");
    }
    const double d11 = std::max(0.0, rho(0, 0).real());
    const double d22 = std::max(0.0, rho(1, 1).real());
    const double d33 = std::max(0.0, rho(2, 2).real());
    const double d44 = std::max(0.0, rho(3, 3).real());
    const double inner = std::abs(rho(1, 2)) - std::sqrt(d11 * d44);
    const double outer = std::abs(rho(0, 3)) - std::sqrt(d22 * d33);
    return 2.0 * std::max({0.0, inner, outer});
}

double pure_input_concurrence(double theta, double phi) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
        throw std::invalid_argument("pure_input_concurrence: theta outside [0, pi]");
    }
    if (!(phi >= 0.0 && phi <= 2.0 * std::numbers::pi)) {
        throw std::invalid_argument("pure_input_concurrence: phi outside [0, 2pi]");
    }
    return std::abs(std::sin(theta));
}

}  // namespace dmspin::concurrence
