#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dmspin/concurrence.hpp"
#include "dmspin/linalg.hpp"
#include "dmspin/model.hpp"
#include "dmspin/teleport.hpp"
#include "test_support.hpp"

using dmspin::Complex;
using dmspin::linalg::CMatrix;
using namespace dmspin;

namespace {

CMatrix bell_phi_plus() {
    CMatrix rho(4);
    rho(0, 0) = 0.5;
    rho(3, 3) = 0.5;
    rho(0, 3) = 0.5;
    rho(3, 0) = 0.5;
    return rho;
}

CMatrix maximally_mixed() { return 0.25 * CMatrix::identity(4); }

}  // namespace

TEST_CASE("wootters concurrence on fixed states") {
    CHECK(concurrence::wootters_concurrence(maximally_mixed()) == doctest::Approx(0.0));

    CMatrix psi_minus(4);
    psi_minus(1, 1) = 0.5;
    psi_minus(2, 2) = 0.5;
    psi_minus(1, 2) = -0.5;
    psi_minus(2, 1) = -0.5;
    CHECK(concurrence::wootters_concurrence(psi_minus) == doctest::Approx(1.0).epsilon(1e-10));

    const CMatrix thermal = model::thermal_state(model::ModelParams(-0.5, 1.0, 0.1)).rho;
    CHECK(concurrence::wootters_concurrence(thermal) == doctest::Approx(0.597).epsilon(0.0035));
}

TEST_CASE("wootters concurrence rejects invalid density matrices") {
    CMatrix not_normalized = CMatrix::identity(4);
    CHECK_THROWS_AS(concurrence::wootters_concurrence(not_normalized), std::invalid_argument);

    CMatrix not_hermitian = maximally_mixed();
    not_hermitian(0, 1) = Complex(0.0, 0.3);
    CHECK_THROWS_AS(concurrence::wootters_concurrence(not_hermitian), std::invalid_argument);
}

TEST_CASE("wootters stays in [0,1] on random density matrices") {
    auto rng = test_support::make_rng(101);
    for (int trial = 0; trial < 1000; ++trial) {
        const CMatrix rho = test_support::random_density(rng, 4);
        const double c = concurrence::wootters_concurrence(rho);
        CHECK(c >= 0.0);
        CHECK(c <= 1.0 + 1e-12);
    }
}

TEST_CASE("wootters is invariant under local unitaries") {
    auto rng = test_support::make_rng(103);
    for (int trial = 0; trial < 100; ++trial) {
        const CMatrix rho = test_support::random_density(rng, 4);
        const CMatrix uv =
            linalg::kron(test_support::random_unitary2(rng), test_support::random_unitary2(rng));
        const CMatrix rotated = uv * rho * uv.adjoint();
        CHECK(std::abs(concurrence::wootters_concurrence(rotated) -
                       concurrence::wootters_concurrence(rho)) < 1e-9);
    }
}

TEST_CASE("both published forms of the Wootters combination coincide") {
    // max{0, 2 max_i(l_i) - sum_i l_i} vs max{0, l1 - l2 - l3 - l4}: recompute
    // the lambdas independently and compare the two reductions.
    auto rng = test_support::make_rng(107);
    const CMatrix s = linalg::kron(model::sigma_y(), model::sigma_y());
    for (int trial = 0; trial < 200; ++trial) {
        const CMatrix rho = test_support::random_density(rng, 4);
        const CMatrix root = linalg::psd_sqrt(rho);
        const auto eig = linalg::hermitian_eig(root * (s * rho.conjugate() * s) * root);
        std::array<double, 4> lambda{};
        for (int i = 0; i < 4; ++i) lambda[i] = std::sqrt(std::max(0.0, eig.eigenvalues[i]));
        std::sort(lambda.begin(), lambda.end(), std::greater<>());
        const double sum = lambda[0] + lambda[1] + lambda[2] + lambda[3];
        const double form_a = std::max(0.0, 2.0 * lambda[0] - sum);
        const double form_b = std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
        CHECK(form_a == doctest::Approx(form_b).epsilon(1e-14));
        CHECK(concurrence::wootters_concurrence(rho) == doctest::Approx(form_b).epsilon(1e-10));
    }
}

TEST_CASE("x-state concurrence") {
    CHECK(concurrence::xstate_concurrence(maximally_mixed()) == doctest::Approx(0.0));
    CHECK(concurrence::xstate_concurrence(bell_phi_plus()) == doctest::Approx(1.0));

    SUBCASE("rejects non-X input") {
        CMatrix rho = maximally_mixed();
        rho(0, 1) = 0.05;
        rho(1, 0) = 0.05;
        CHECK_THROWS_AS(concurrence::xstate_concurrence(rho), std::invalid_argument);
    }
    SUBCASE("matches wootters on thermal states") {
        for (double coupling : {-1.5, -0.5, 0.5, 1.5}) {
            for (double dm : {0.0, 1.0, 3.0}) {
                for (double temp : {0.05, 0.5, 2.0}) {
                    const CMatrix rho =
                        model::thermal_state(model::ModelParams(coupling, dm, temp)).rho;
                    CHECK(std::abs(concurrence::xstate_concurrence(rho) -
                                   concurrence::wootters_concurrence(rho)) < 1e-10);
                }
            }
        }
    }
    SUBCASE("matches wootters on random X states") {
        auto rng = test_support::make_rng(109);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (int trial = 0; trial < 200; ++trial) {
            // Random X state: diagonal weights plus feasible coherences.
            double d[4];
            double total = 0.0;
            for (double& v : d) {
                v = uni(rng) + 1e-3;
                total += v;
            }
            for (double& v : d) v /= total;
            const double inner = uni(rng) * std::sqrt(d[1] * d[2]);
            const double outer = uni(rng) * std::sqrt(d[0] * d[3]);
            const Complex inner_phase = std::polar(inner, 2.0 * std::numbers::pi * uni(rng));
            const Complex outer_phase = std::polar(outer, 2.0 * std::numbers::pi * uni(rng));
            CMatrix rho(4);
            for (int i = 0; i < 4; ++i) rho(i, i) = d[i];
            rho(1, 2) = inner_phase;
            rho(2, 1) = std::conj(inner_phase);
            rho(0, 3) = outer_phase;
            rho(3, 0) = std::conj(outer_phase);
            CHECK(std::abs(concurrence::xstate_concurrence(rho) -
                           concurrence::wootters_concurrence(rho)) < 1e-10);
        }
    }
}

TEST_CASE("pure input concurrence") {
    CHECK(concurrence::pure_input_concurrence(std::numbers::pi / 2.0, 0.3) ==
          doctest::Approx(1.0));
    CHECK(concurrence::pure_input_concurrence(0.0, 0.0) == doctest::Approx(0.0));

    SUBCASE("equals the Wootters value of the projector") {
        const double theta = std::numbers::pi / 3.0, phi = 1.1;
        const double direct = concurrence::pure_input_concurrence(theta, phi);
        CHECK(direct == doctest::Approx(std::sin(std::numbers::pi / 3.0)).epsilon(1e-12));
        const CMatrix rho = teleport::PureInput(theta, phi).density();
        CHECK(direct == doctest::Approx(concurrence::wootters_concurrence(rho)).epsilon(1e-10));
    }
    SUBCASE("independent of phi") {
        for (double theta : {0.0, 0.4, 1.0, 2.2, std::numbers::pi}) {
            const double base = concurrence::pure_input_concurrence(theta, 0.0);
            for (double phi : {0.7, 3.1, 6.2}) {
                CHECK(concurrence::pure_input_concurrence(theta, phi) == base);
            }
        }
    }
    SUBCASE("range validation") {
        CHECK_THROWS_AS(concurrence::pure_input_concurrence(-0.1, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(concurrence::pure_input_concurrence(1.0, 7.0), std::invalid_argument);
    }
}
