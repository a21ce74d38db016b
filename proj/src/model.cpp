#include "dmspin/model.hpp"

#include <algorithm>
#include <cmath>

namespace dmspin::model {

namespace {

// Boltzmann weights e^{-beta E} scaled by the largest one. zs is the scaled
// partition function; the true Z is e^{shift} * zs.
struct ScaledWeights {
    double corner;  // |11>, |00> at energy J/2
    double plus;    // |+> at  J sqrt(1+D^2) - J/2
    double minus;   // |-> at -J sqrt(1+D^2) - J/2
    double zs;
    double shift;
};

ScaledWeights boltzmann_weights(const ModelParams& p) {
    const double beta = p.beta();
    const double delta = p.delta();
    const double x_corner = -beta * p.J / 2.0;
    const double x_plus = beta * (p.J - delta) / 2.0;
    const double x_minus = beta * (p.J + delta) / 2.0;
    const double shift = std::max({x_corner, x_plus, x_minus});
    ScaledWeights w{};
    w.corner = std::exp(x_corner - shift);
    w.plus = std::exp(x_plus - shift);
    w.minus = std::exp(x_minus - shift);
    w.zs = 2.0 * w.corner + w.plus + w.minus;
    w.shift = shift;
    return w;
}

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

// e^{J/T} |sinh(delta/2T)| - 1: positive iff the thermal state is entangled.
// Written as (e^{a1/T} - e^{a2/T})/2 - 1 with a1 >= a2 to stay overflow-safe.
double entanglement_indicator(double coupling, double dm, double temperature) {
    const double spread = std::abs(coupling) * std::sqrt(1.0 + dm * dm);
    const double a1 = coupling + spread;
    const double a2 = coupling - spread;
    const double u = 1.0 / temperature;
    if (a1 * u > 700.0) return 1e300;
    return 0.5 * (std::exp(a1 * u) - std::exp(a2 * u)) - 1.0;
}

}  // namespace

ModelParams::ModelParams(double coupling, double dm, double temperature)
    : J(coupling), D(dm), T(temperature) {
    if (!std::isfinite(J) || !std::isfinite(D) || !std::isfinite(T)) {
        throw std::invalid_argument("ModelParams: parameters must be finite");
    }
    if (T < kMinTemperature) T = kMinTemperature;
}

double ModelParams::delta() const noexcept { return 2.0 * J * std::sqrt(1.0 + D * D); }

double ModelParams::theta_phase() const noexcept { return std::atan(D); }

CMatrix identity2() { return CMatrix::identity(2); }

CMatrix sigma_x() {
    CMatrix m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

CMatrix sigma_y() {
    CMatrix m(2);
    m(0, 1) = Complex(0.0, -1.0);
    m(1, 0) = Complex(0.0, 1.0);
    return m;
}

CMatrix sigma_z() {
    CMatrix m(2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

CMatrix hamiltonian(const ModelParams& params) {
    using linalg::kron;
    const CMatrix sx = sigma_x(), sy = sigma_y(), sz = sigma_z();
    CMatrix h = kron(sx, sx) + kron(sy, sy) + kron(sz, sz) +
                params.D * (kron(sx, sy) - kron(sy, sx));
    return 0.5 * params.J * h;
}

std::array<SpectrumEntry, 4> spectrum_closed_form(const ModelParams& params) {
    const double spread = params.J * std::sqrt(1.0 + params.D * params.D);
    const double half_j = params.J / 2.0;
    const Complex phase = std::polar(1.0, params.theta_phase());
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    const Complex zero{};
    std::array<SpectrumEntry, 4> out{};
    out[0] = SpectrumEntry{Level::E11, half_j, {Complex(1.0), zero, zero, zero}};
    out[1] = SpectrumEntry{Level::E00, half_j, {zero, zero, zero, Complex(1.0)}};
    out[2] = SpectrumEntry{Level::Plus, spread - half_j,
                           {zero, phase * inv_sqrt2, Complex(inv_sqrt2), zero}};
    out[3] = SpectrumEntry{Level::Minus, -spread - half_j,
                           {zero, -phase * inv_sqrt2, Complex(inv_sqrt2), zero}};
    return out;
}

ThermalState thermal_state(const ModelParams& params) {
    const ScaledWeights w = boltzmann_weights(params);
    const Complex phase = std::polar(1.0, params.theta_phase());

    CMatrix rho(4);
    rho(0, 0) = w.corner / w.zs;
    rho(3, 3) = w.corner / w.zs;
    rho(1, 1) = (w.plus + w.minus) / (2.0 * w.zs);
    rho(2, 2) = rho(1, 1);
    rho(1, 2) = phase * ((w.plus - w.minus) / (2.0 * w.zs));
    rho(2, 1) = std::conj(rho(1, 2));

    const double log_z = w.shift + std::log(w.zs);
    return ThermalState{std::exp(log_z), log_z, rho, params};
}

double log_partition_function(const ModelParams& params) {
    const ScaledWeights w = boltzmann_weights(params);
    return w.shift + std::log(w.zs);
}

CMatrix ground_state_projector(const ModelParams& params) {
    const auto spectrum = spectrum_closed_form(params);
    double e_min = spectrum[0].energy;
    for (const auto& entry : spectrum) e_min = std::min(e_min, entry.energy);
    const double tol = 1e-12 * std::max(1.0, std::abs(params.J));

    CMatrix proj(4);
    int degeneracy = 0;
    for (const auto& entry : spectrum) {
        if (entry.energy - e_min > tol) continue;
        ++degeneracy;
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                proj(r, c) += entry.state[r] * std::conj(entry.state[c]);
            }
        }
    }
    return proj * (1.0 / degeneracy);
}

double channel_concurrence(const ModelParams& params) {
    const ScaledWeights w = boltzmann_weights(params);
    const double bracket = 0.5 * std::abs(w.plus - w.minus) - w.corner;
    if (bracket <= 0.0) return 0.0;
    return 2.0 * bracket / w.zs;
}

std::optional<double> critical_temperature(double coupling, double dm) {
    if (coupling == 0.0) {
        throw std::invalid_argument("critical_temperature: J must be nonzero");
    }
    const double t_lo = 1e-3;
    const double t_hi = 50.0 * std::max(1.0, std::abs(coupling) * std::sqrt(1.0 + dm * dm));
    constexpr int kScanPoints = 400;

    // Geometric scan for a sign change of the indicator, then bisection.
    double prev_t = t_lo;
    double prev_g = entanglement_indicator(coupling, dm, prev_t);
    const double ratio = std::pow(t_hi / t_lo, 1.0 / (kScanPoints - 1));
    double lo = 0.0, hi = 0.0;
    bool bracketed = false;
    for (int i = 1; i < kScanPoints; ++i) {
        const double t = t_lo * std::pow(ratio, i);
        const double g = entanglement_indicator(coupling, dm, t);
        if (sign_of(prev_g) != sign_of(g)) {
            lo = prev_t;
            hi = t;
            bracketed = true;
            break;
        }
        prev_t = t;
        prev_g = g;
    }
    if (!bracketed) return std::nullopt;

    double g_lo = entanglement_indicator(coupling, dm, lo);
    while (hi - lo > 1e-8) {
        const double mid = 0.5 * (lo + hi);
        const double g_mid = entanglement_indicator(coupling, dm, mid);
        if (sign_of(g_mid) == sign_of(g_lo)) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace dmspin::model
