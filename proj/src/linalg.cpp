#include "dmspin/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dmspin::linalg {

namespace {

void require_same_dim(const CMatrix& a, const CMatrix& b, const char* what) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    }
}

double offdiag_frobenius(const CMatrix& m) {
    double acc = 0.0;
    for (int r = 0; r < m.dim(); ++r) {
        for (int c = 0; c < m.dim(); ++c) {
            if (r != c) acc += std::norm(m(r, c));
        }
    }
    return std::sqrt(acc);
}

// Average out rounding-level asymmetry so Jacobi sees an exactly Hermitian input.
CMatrix hermitize(const CMatrix& m) {
    CMatrix out(m.dim());
    for (int r = 0; r < m.dim(); ++r) {
        out(r, r) = Complex(m(r, r).real(), 0.0);
        for (int c = r + 1; c < m.dim(); ++c) {
            const Complex mean = 0.5 * (m(r, c) + std::conj(m(c, r)));
            out(r, c) = mean;
            out(c, r) = std::conj(mean);
        }
    }
    return out;
}

}  // namespace

CMatrix::CMatrix(int dim) : dim_(dim) {
    if (dim < 1 || dim > 8) {
        throw std::invalid_argument("CMatrix: dim must be in [1,8]");
    }
}

CMatrix CMatrix::identity(int dim) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
    require_same_dim(*this, rhs, "operator+");
    for (int i = 0; i < dim_ * dim_; ++i) a_[i] += rhs.a_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
    require_same_dim(*this, rhs, "operator-");
    for (int i = 0; i < dim_ * dim_; ++i) a_[i] -= rhs.a_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex s) noexcept {
    for (int i = 0; i < dim_ * dim_; ++i) a_[i] *= s;
    return *this;
}

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
    require_same_dim(lhs, rhs, "operator*");
    const int n = lhs.dim();
    CMatrix out(n);
    for (int r = 0; r < n; ++r) {
        for (int k = 0; k < n; ++k) {
            const Complex v = lhs(r, k);
            if (v == Complex{}) continue;
            for (int c = 0; c < n; ++c) out(r, c) += v * rhs(k, c);
        }
    }
    return out;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(dim_);
    for (int r = 0; r < dim_; ++r) {
        for (int c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    }
    return out;
}

CMatrix CMatrix::conjugate() const {
    CMatrix out(dim_);
    for (int r = 0; r < dim_; ++r) {
        for (int c = 0; c < dim_; ++c) out(r, c) = std::conj((*this)(r, c));
    }
    return out;
}

Complex CMatrix::trace() const noexcept {
    Complex acc{};
    for (int i = 0; i < dim_; ++i) acc += (*this)(i, i);
    return acc;
}

double CMatrix::frobenius_norm() const noexcept {
    double acc = 0.0;
    for (int i = 0; i < dim_ * dim_; ++i) acc += std::norm(a_[i]);
    return std::sqrt(acc);
}

double CMatrix::max_abs() const noexcept {
    double mx = 0.0;
    for (int i = 0; i < dim_ * dim_; ++i) mx = std::max(mx, std::abs(a_[i]));
    return mx;
}

bool CMatrix::is_finite() const noexcept {
    for (int i = 0; i < dim_ * dim_; ++i) {
        if (!std::isfinite(a_[i].real()) || !std::isfinite(a_[i].imag())) return false;
    }
    return true;
}

bool CMatrix::is_hermitian(double tol) const noexcept {
    for (int r = 0; r < dim_; ++r) {
        for (int c = r; c < dim_; ++c) {
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
        }
    }
    return true;
}

double max_abs_diff(const CMatrix& lhs, const CMatrix& rhs) {
    require_same_dim(lhs, rhs, "max_abs_diff");
    double mx = 0.0;
    for (int r = 0; r < lhs.dim(); ++r) {
        for (int c = 0; c < lhs.dim(); ++c) {
            mx = std::max(mx, std::abs(lhs(r, c) - rhs(r, c)));
        }
    }
    return mx;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    if (a.dim() != 2 || b.dim() != 2) {
        throw std::invalid_argument("kron: both factors must be 2x2");
    }
    CMatrix out(4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                for (int l = 0; l < 2; ++l) {
                    out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

EigResult hermitian_eig(const CMatrix& h) {
    if (!h.is_finite()) throw std::invalid_argument("hermitian_eig: non-finite input");
    if (!h.is_hermitian(1e-12)) throw std::invalid_argument("hermitian_eig: input not Hermitian");

    const int n = h.dim();
    CMatrix a = hermitize(h);
    CMatrix v = CMatrix::identity(n);
    const double scale = std::max(1.0, a.frobenius_norm());

    constexpr int kMaxSweeps = 100;
    constexpr double kOffTol = 1e-14;

    // Sweep until the off-diagonal mass stops shrinking (rounding floor);
    // small eigenvalues then carry machine absolute accuracy, not just kOffTol.
    double off = offdiag_frobenius(a);
    for (int sweep = 0; sweep < kMaxSweeps && off > 0.0; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag < 1e-300) continue;

                // Unitary 2x2 rotation U = [[c, -s*phase],[s*conj(phase), c]]
                // annihilating the (p,q) element; smaller tangent root for stability.
                const Complex phase = apq / mag;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (tau >= 0.0) ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex u_pq = -s * phase;
                const Complex u_qp = s * std::conj(phase);

                for (int k = 0; k < n; ++k) {  // A <- A U, V <- V U
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * c + akq * u_qp;
                    a(k, q) = akp * u_pq + akq * c;
                    const Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * u_qp;
                    v(k, q) = vkp * u_pq + vkq * c;
                }
                for (int k = 0; k < n; ++k) {  // A <- U† A
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(u_qp) * aqk;
                    a(q, k) = std::conj(u_pq) * apk + c * aqk;
                }
                a(p, q) = Complex{};
                a(q, p) = Complex{};
                a(p, p) = Complex(a(p, p).real(), 0.0);
                a(q, q) = Complex(a(q, q).real(), 0.0);
            }
        }
        const double new_off = offdiag_frobenius(a);
        if (new_off >= off) break;
        off = new_off;
    }
    if (off > kOffTol * scale) {
        throw numerical_error("hermitian_eig: Jacobi sweep cap exceeded");
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigResult res{std::vector<double>(n), CMatrix(n)};
    for (int c = 0; c < n; ++c) {
        res.eigenvalues[c] = a(order[c], order[c]).real();
        for (int r = 0; r < n; ++r) res.eigenvectors(r, c) = v(r, order[c]);
    }
    return res;
}

CMatrix mat_exp_hermitian(const CMatrix& h, double s) {
    const EigResult eig = hermitian_eig(h);
    const int n = h.dim();
    CMatrix out(n);
    for (int k = 0; k < n; ++k) {
        const double w = std::exp(s * eig.eigenvalues[k]);
        for (int r = 0; r < n; ++r) {
            const Complex vr = eig.eigenvectors(r, k) * w;
            for (int c = 0; c < n; ++c) {
                out(r, c) += vr * std::conj(eig.eigenvectors(c, k));
            }
        }
    }
    return out;
}

CMatrix psd_sqrt(const CMatrix& m) {
    const EigResult eig = hermitian_eig(m);
    const int n = m.dim();
    CMatrix out(n);
    for (int k = 0; k < n; ++k) {
        double lambda = eig.eigenvalues[k];
        if (lambda < -1e-8) {
            throw std::invalid_argument("psd_sqrt: input has a significantly negative eigenvalue");
        }
        if (lambda < 0.0) lambda = 0.0;
        const double w = std::sqrt(lambda);
        for (int r = 0; r < n; ++r) {
            const Complex vr = eig.eigenvectors(r, k) * w;
            for (int c = 0; c < n; ++c) {
                out(r, c) += vr * std::conj(eig.eigenvectors(c, k));
            }
        }
    }
    return out;
}

}  // namespace dmspin::linalg
