// linalg.hpp — small dense complex matrices (2x2 and 4x4): products, adjoints,
// Kronecker products, Hermitian eigendecomposition, matrix exponential, PSD root.

#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

namespace dmspin {

using Complex = std::complex<double>;

// Iterative routine failed to converge (maps to CLI exit code 2).
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace linalg {

// Dense square complex matrix, row-major. Working sizes are 2x2 and 4x4;
// dim up to 8 is allowed for the block embeddings used internally.
class CMatrix {
public:
    explicit CMatrix(int dim);
    static CMatrix identity(int dim);

    int dim() const noexcept { return dim_; }

    Complex& operator()(int r, int c) noexcept { return a_[r * dim_ + c]; }
    const Complex& operator()(int r, int c) const noexcept { return a_[r * dim_ + c]; }

    CMatrix& operator+=(const CMatrix& rhs);
    CMatrix& operator-=(const CMatrix& rhs);
    CMatrix& operator*=(Complex s) noexcept;

    friend CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
    friend CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }
    friend CMatrix operator*(CMatrix m, Complex s) noexcept { return m *= s; }
    friend CMatrix operator*(Complex s, CMatrix m) noexcept { return m *= s; }
    friend CMatrix operator*(CMatrix m, double s) noexcept { return m *= Complex(s, 0.0); }
    friend CMatrix operator*(double s, CMatrix m) noexcept { return m *= Complex(s, 0.0); }
    friend CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);

    CMatrix adjoint() const;
    CMatrix conjugate() const;
    Complex trace() const noexcept;
    double frobenius_norm() const noexcept;
    double max_abs() const noexcept;

    bool is_finite() const noexcept;
    bool is_hermitian(double tol = 1e-12) const noexcept;

private:
    int dim_;
    std::array<Complex, 64> a_{};  // upper-left dim x dim block is in use
};

// Largest |lhs - rhs| entry; dimension mismatch throws.
double max_abs_diff(const CMatrix& lhs, const CMatrix& rhs);

struct EigResult {
    std::vector<double> eigenvalues;  // ascending
    CMatrix eigenvectors;             // columns, orthonormal
};

// Kronecker product of two 2x2 matrices: out[(2i+k),(2j+l)] = a(i,j) * b(k,l).
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Cyclic complex Jacobi, iterated to the rounding floor. Input must be
// Hermitian within 1e-12; fails if 100 sweeps leave the off-diagonal
// Frobenius mass above 1e-14 (relative).
EigResult hermitian_eig(const CMatrix& h);

// V diag(e^{s*lambda_i}) V† for Hermitian h.
CMatrix mat_exp_hermitian(const CMatrix& h, double s);

// Hermitian PSD square root. Eigenvalues in [-1e-8, 0) are clamped to 0;
// anything below -1e-8 is rejected.
CMatrix psd_sqrt(const CMatrix& m);

}  // namespace linalg
}  // namespace dmspin
