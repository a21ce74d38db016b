// model.hpp — two-qubit Heisenberg pair with a z-axis Dzyaloshinskii-Moriya term:
// Hamiltonian, closed-form spectrum, Gibbs state, thermal concurrence, critical
// temperature.
//
// Basis order everywhere: {|11>, |10>, |01>, |00>} as rows/columns 1..4, with
// qubit 1 the left Kronecker factor and the local order {|1>, |0>} per qubit.

#pragma once

#include <array>
#include <optional>

#include "dmspin/linalg.hpp"

namespace dmspin::model {

using linalg::CMatrix;

// Requests below this temperature are clamped; the exact T -> 0 limit is
// available via ground_state_projector.
inline constexpr double kMinTemperature = 1e-6;

// Physical knobs in units where the Boltzmann constant is 1 and J, D are
// dimensionless. J > 0 is antiferromagnetic, J < 0 ferromagnetic; D is the
// DM strength along z.
struct ModelParams {
    double J;
    double D;
    double T;

    ModelParams(double coupling, double dm, double temperature);

    double beta() const noexcept { return 1.0 / T; }
    double delta() const noexcept;        // 2 J sqrt(1 + D^2), carries the sign of J
    double theta_phase() const noexcept;  // arctan(D)
};

// Pauli matrices in the local basis {|1>, |0>} (sigma_z |1> = +|1>).
CMatrix identity2();
CMatrix sigma_x();
CMatrix sigma_y();
CMatrix sigma_z();

// (J/2) [sx sx + sy sy + sz sz + D (sx sy - sy sx)], Hermitian by construction.
CMatrix hamiltonian(const ModelParams& params);

enum class Level { E11, E00, Plus, Minus };

struct SpectrumEntry {
    Level label;
    double energy;
    std::array<Complex, 4> state;  // unit norm
};

// Exact spectrum: |11>, |00> at J/2; |±> = (|01> ± e^{i theta}|10>)/sqrt(2)
// at ±J sqrt(1+D^2) - J/2 with theta = arctan(D).
std::array<SpectrumEntry, 4> spectrum_closed_form(const ModelParams& params);

struct ThermalState {
    double Z;      // partition function; overflows to +inf only at extreme beta
    double log_Z;  // always finite
    CMatrix rho;   // 4x4, Hermitian, unit trace, X-structured
    ModelParams params;
};

// Gibbs state assembled in closed form. Boltzmann weights are scaled by the
// largest exponent first, so any beta is safe.
ThermalState thermal_state(const ModelParams& params);

double log_partition_function(const ModelParams& params);

// Exact T -> 0 density matrix: uniform mixture over the degenerate ground manifold.
CMatrix ground_state_projector(const ModelParams& params);

// Thermal concurrence of the pair; exact 0 on the separable side.
double channel_concurrence(const ModelParams& params);

// Temperature where the thermal concurrence vanishes, from
// e^{J/T} sinh(delta/2T) = ±1 (sign of J), by scan + bisection to 1e-8.
// Empty when the state is separable at every temperature. J = 0 is rejected.
std::optional<double> critical_temperature(double coupling, double dm);

}  // namespace dmspin::model
