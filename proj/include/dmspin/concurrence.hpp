// concurrence.hpp — two-qubit entanglement: the general Wootters concurrence,
// the X-state closed form, and the concurrence of the pure input family.

#pragma once

#include "dmspin/linalg.hpp"

namespace dmspin::concurrence {

using linalg::CMatrix;

// Hermitian within 1e-12, unit trace within 1e-12, eigenvalues >= -1e-10.
// Throws std::invalid_argument otherwise.
void validate_density_matrix(const CMatrix& rho);

// True when only the diagonal and anti-diagonal carry weight (within tol).
bool is_x_structured(const CMatrix& rho, double tol = 1e-12);

// Wootters concurrence via a Hermitian reformulation: the lambda_i are the
// singular values of sqrt(rho) S conj(sqrt(rho)) with S = sigma_y ⊗ sigma_y
// (equivalently the square roots of the eigenvalues of rho S rho* S), sorted
// descending; C = max{0, l1 - l2 - l3 - l4}. Conjugation is entrywise in the
// fixed {|11>,|10>,|01>,|00>} basis.
double wootters_concurrence(const CMatrix& rho);

// Closed form for X states: 2 max{0, |rho23| - sqrt(rho11 rho44),
// |rho14| - sqrt(rho22 rho33)}. Non-X input is rejected.
double xstate_concurrence(const CMatrix& rho);

// Concurrence of cos(theta/2)|10> + e^{i phi} sin(theta/2)|01>, i.e. |sin theta|.
double pure_input_concurrence(double theta, double phi);

}  // namespace dmspin::concurrence
