#include "dmspin/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "dmspin/concurrence.hpp"

namespace dmspin::teleport {

namespace {

constexpr double kPi = std::numbers::pi;

CMatrix projector_from(const std::array<Complex, 4>& v) {
    CMatrix m(4);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) m(r, c) = v[r] * std::conj(v[c]);
    }
    return m;
}

// sigma_0..sigma_3 = I, x, y, z.
const std::array<CMatrix, 4>& pauli_basis() {
    static const std::array<CMatrix, 4> basis = {
        model::identity2(), model::sigma_x(), model::sigma_y(), model::sigma_z()};
    return basis;
}

// The 16 conjugators sigma_i ⊗ sigma_j (Hermitian and unitary).
const std::array<CMatrix, 16>& pauli_pairs() {
    static const std::array<CMatrix, 16> pairs = [] {
        std::array<CMatrix, 16> out{
            CMatrix(4), CMatrix(4), CMatrix(4), CMatrix(4), CMatrix(4), CMatrix(4),
            CMatrix(4), CMatrix(4), CMatrix(4), CMatrix(4), CMatrix(4), CMatrix(4),
            CMatrix(4), CMatrix(4), CMatrix(4), CMatrix(4)};
        const auto& sigma = pauli_basis();
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) out[4 * i + j] = linalg::kron(sigma[i], sigma[j]);
        }
        return out;
    }();
    return pairs;
}

// Gauss-Legendre nodes/weights on [-1, 1], Newton iteration on P_n.
std::vector<std::pair<double, double>> gauss_legendre(int n) {
    std::vector<std::pair<double, double>> nodes(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double deriv = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            deriv = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / deriv;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        nodes[i] = {x, w};
        nodes[n - 1 - i] = {-x, w};
    }
    return nodes;
}

}  // namespace

PureInput::PureInput(double theta_in, double phi_in) : theta(theta_in), phi(phi_in) {
    if (!(theta >= 0.0 && theta <= kPi)) {
        throw std::invalid_argument("PureInput: theta outside [0, pi]");
    }
    if (!(phi >= 0.0 && phi <= 2.0 * kPi)) {
        throw std::invalid_argument("PureInput: phi outside [0, 2pi]");
    }
}

std::array<Complex, 4> PureInput::state() const {
    return {Complex{}, Complex(std::cos(theta / 2.0)),
            std::polar(std::sin(theta / 2.0), phi), Complex{}};
}

CMatrix PureInput::density() const { return projector_from(state()); }

double PureInput::input_concurrence() const {
    return concurrence::pure_input_concurrence(theta, phi);
}

BellBasis bell_projectors() {
    const double s = 1.0 / std::sqrt(2.0);
    const std::array<Complex, 4> psi_minus = {Complex{}, Complex(-s), Complex(s), Complex{}};
    const std::array<Complex, 4> phi_minus = {Complex(-s), Complex{}, Complex{}, Complex(s)};
    const std::array<Complex, 4> phi_plus = {Complex(s), Complex{}, Complex{}, Complex(s)};
    const std::array<Complex, 4> psi_plus = {Complex{}, Complex(s), Complex(s), Complex{}};
    return BellBasis{{projector_from(psi_minus), projector_from(phi_minus),
                      projector_from(phi_plus), projector_from(psi_plus)}};
}

std::array<double, 4> bell_traces_closed_form(const model::ModelParams& params) {
    // tr(E^0 rho) = e^{bJ/2}[cosh(bd/2) + cos(theta) sinh(bd/2)]/Z and
    // tr(E^3 rho) with -cos(theta); rewritten in scaled Boltzmann weights
    // w_plus, w_minus so extreme beta stays finite.
    const double beta = params.beta();
    const double delta = params.delta();
    const double cos_phase = 1.0 / std::sqrt(1.0 + params.D * params.D);

    const double x_corner = -beta * params.J / 2.0;
    const double x_plus = beta * (params.J - delta) / 2.0;
    const double x_minus = beta * (params.J + delta) / 2.0;
    const double shift = std::max({x_corner, x_plus, x_minus});
    const double wc = std::exp(x_corner - shift);
    const double wp = std::exp(x_plus - shift);
    const double wm = std::exp(x_minus - shift);
    const double zs = 2.0 * wc + wp + wm;

    const double q0 = (wp * (1.0 - cos_phase) + wm * (1.0 + cos_phase)) / (2.0 * zs);
    const double q3 = (wp * (1.0 + cos_phase) + wm * (1.0 - cos_phase)) / (2.0 * zs);
    const double q12 = wc / zs;
    return {q0, q12, q12, q3};
}

std::array<double, 4> bell_traces_direct(const model::ThermalState& channel) {
    const BellBasis basis = bell_projectors();
    std::array<double, 4> q{};
    for (int i = 0; i < 4; ++i) {
        q[i] = (basis.projector[i] * channel.rho).trace().real();
    }
    return q;
}

ChannelProbs channel_probabilities(const model::ThermalState& channel) {
    const auto closed = bell_traces_closed_form(channel.params);
    const auto direct = bell_traces_direct(channel);
    for (int i = 0; i < 4; ++i) {
        if (std::abs(closed[i] - direct[i]) > 1e-12) {
            throw numerical_error("channel_probabilities: closed form and trace disagree");
        }
    }
    ChannelProbs probs{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) probs.p[i][j] = closed[i] * closed[j];
    }
    return probs;
}

CMatrix teleport_output(const PureInput& input, const ChannelProbs& probs) {
    const CMatrix rho_in = input.density();
    const auto& pairs = pauli_pairs();
    CMatrix out(4);
    for (int k = 0; k < 16; ++k) {
        const double p = probs.p[k / 4][k % 4];
        if (p == 0.0) continue;
        out += p * (pairs[k] * rho_in * pairs[k]);
    }
    return out;
}

double output_concurrence_oracle(const model::ModelParams& params, const PureInput& input) {
    const ChannelProbs probs = channel_probabilities(model::thermal_state(params));
    return concurrence::wootters_concurrence(teleport_output(input, probs));
}

double output_concurrence_paper(const model::ModelParams& params, double c_in) {
    if (!(c_in >= 0.0 && c_in <= 1.0)) {
        throw std::invalid_argument("output_concurrence_paper: c_in outside [0, 1]");
    }
    const double beta = params.beta();
    const double h = std::abs(beta * params.delta() / 2.0);
    const double d2 = params.D * params.D;
    if (c_in == 0.0 || h == 0.0) return 0.0;

    // log-scale evaluation of  c_in e^{bJ} sinh^2 h  vs  2(1+D^2) cosh h
    const double log_sinh = h + std::log(-std::expm1(-2.0 * h)) - std::numbers::ln2;
    const double log_cosh = h + std::log1p(std::exp(-2.0 * h)) - std::numbers::ln2;
    const double t1 = std::log(c_in) + beta * params.J + 2.0 * log_sinh;
    const double t2 = std::log(2.0 * (1.0 + d2)) + log_cosh;
    if (t1 <= t2) return 0.0;

    const double log_bracket = t1 + std::log(-std::expm1(t2 - t1));
    const double log_z = model::log_partition_function(params);
    return std::exp(std::numbers::ln2 + log_bracket - 2.0 * log_z - std::log1p(d2));
}

double fidelity(const PureInput& input, const CMatrix& rho_out) {
    concurrence::validate_density_matrix(rho_out);
    const auto psi = input.state();

    double shortcut = 0.0;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            shortcut += (std::conj(psi[r]) * rho_out(r, c) * psi[c]).real();
        }
    }

    // sqrt(rho_in) rho_out sqrt(rho_in) is rank one for a pure input, so
    // eigenvalues at rounding level are spurious and would contribute
    // sqrt(noise) ~ 1e-8 to the trace; floor them before the square root.
    const CMatrix root_in = linalg::psd_sqrt(input.density());
    const auto eig = linalg::hermitian_eig(root_in * rho_out * root_in);
    const double floor = 1e-12 * std::max(1.0, eig.eigenvalues.back());
    double tr = 0.0;
    for (double lambda : eig.eigenvalues) {
        if (lambda > floor) tr += std::sqrt(lambda);
    }
    const double general = tr * tr;

    if (std::abs(general - shortcut) > 1e-10) {
        throw numerical_error("fidelity: general form and pure-state shortcut disagree");
    }
    return shortcut;
}

double average_fidelity_closed(const model::ModelParams& params) {
    const double beta = params.beta();
    const double d2 = params.D * params.D;
    const double half_spread = std::abs(params.J) * std::sqrt(1.0 + d2);  // |delta|/2

    // Numerator and squared denominator share the scale e^{2 m}; with
    // m = max(0, b(J+s), b(J-s)) every surviving exponent is <= 0.
    const double xp = beta * (params.J + half_spread);
    const double xm = beta * (params.J - half_spread);
    const double m = std::max({0.0, xp, xm});

    const double denom_core =
        std::exp(-m) + 0.5 * (std::exp(xp - m) + std::exp(xm - m));
    const double numer = 2.0 * (1.0 + d2) * std::exp(-2.0 * m) +
                         (1.0 + 2.0 * d2) * std::exp(2.0 * beta * params.J - 2.0 * m) +
                         0.5 * (3.0 + 2.0 * d2) *
                             (std::exp(2.0 * xp - 2.0 * m) + std::exp(2.0 * xm - 2.0 * m));
    return numer / (6.0 * (1.0 + d2) * denom_core * denom_core);
}

double average_fidelity_quadrature(const model::ModelParams& params, int n_theta, int n_phi) {
    if (n_theta < 8 || n_phi < 8) {
        throw std::invalid_argument("average_fidelity_quadrature: need n_theta, n_phi >= 8");
    }
    const ChannelProbs probs = channel_probabilities(model::thermal_state(params));
    const auto nodes = gauss_legendre(n_theta);

    double acc = 0.0;
    for (const auto& [u, w] : nodes) {
        const double theta = std::acos(std::clamp(u, -1.0, 1.0));
        double phi_sum = 0.0;
        for (int k = 0; k < n_phi; ++k) {
            const PureInput input(theta, 2.0 * kPi * k / n_phi);
            phi_sum += fidelity(input, teleport_output(input, probs));
        }
        acc += w * phi_sum;
    }
    return acc / (2.0 * n_phi);
}

std::optional<double> classical_threshold_temperature(double coupling, double dm) {
    if (coupling == 0.0) {
        throw std::invalid_argument("classical_threshold_temperature: J must be nonzero");
    }
    constexpr double kBenchmark = 2.0 / 3.0;
    const double t_lo = 1e-3;
    double t_hi = 10.0 * std::max(1.0, std::abs(coupling));
    constexpr int kScanPoints = 400;

    const auto excess = [&](double t) {
        return average_fidelity_closed(model::ModelParams(coupling, dm, t)) - kBenchmark;
    };
    while (excess(t_hi) > 0.0 && t_hi < 1e6) t_hi *= 2.0;

    // Descending scan: the first point above the benchmark brackets the
    // largest crossing together with its upper neighbour.
    const double ratio = std::pow(t_hi / t_lo, 1.0 / (kScanPoints - 1));
    double hi = t_hi;
    for (int i = kScanPoints - 2; i >= 0; --i) {
        const double t = t_lo * std::pow(ratio, i);
        if (excess(t) > 0.0) {
            double lo = t;
            while (hi - lo > 1e-8) {
                const double mid = 0.5 * (lo + hi);
                if (excess(mid) > 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return 0.5 * (lo + hi);
        }
        hi = t;
    }
    return std::nullopt;
}

}  // namespace dmspin::teleport
