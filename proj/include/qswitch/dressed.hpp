#pragma once

// Closed-form single-excitation physics: dressed states of one atom-cavity
// pair, the dispersive cavity-gate coupling, quiescent leakage, and the
// order-of-magnitude device estimates. These serve as analytic oracles for
// the numerical modules.

#include "qswitch/model.hpp"

namespace qswitch {

enum class Branch { plus, minus };

/// A dressed state  a_g1 |g 1> + a_e0 |e 0>  of one atom-cavity pair.
/// `energy` is relative to the bare photon energy of that cavity.
struct DressedBranch {
    Branch sign = Branch::plus;
    Complex amplitude_g1;
    Complex amplitude_e0;
    double energy = 0.0;
};

/// chi = sqrt((Delta/2)^2 + Omega^2).
double generalized_rabi(double coupling, double detuning);

/// Eigenstates of [[Delta, Omega], [Omega, 0]] in the (|e 0>, |g 1>) basis:
/// amplitudes proportional to ((-Delta/2 +- chi), Omega) on (|g 1>, |e 0>),
/// energy Delta/2 +- chi. Evaluated without cancellation so |Delta|/Omega up
/// to ~1e12 stays accurate. The |e 0> amplitude is kept nonnegative.
/// Throws std::domain_error when Omega == Delta == 0 and std::invalid_argument
/// for Omega < 0.
DressedBranch dressed_state(double coupling, double detuning, Branch sign);

/// One-excitation dressed energies of the uncoupled (kappa_cq = 0) cavity
/// and gate, relative to omega_c.
struct ResonanceEnergies {
    double cavity_plus;
    double cavity_minus;
    double gate_plus;
    double gate_minus;
};
ResonanceEnergies gate_resonance_energies(const SystemParams& params, const Detunings& det);

/// J = kappa_cq Omega_q / (sqrt(2) delta), the matrix element of the hopping
/// term between |+_c> and the gate branch at the gate-defined resonance.
/// Throws std::domain_error for delta <= 0.
double effective_coupling(const SystemParams& params);

/// exp(-(kappa_cq^2 / (2 delta^2)) kappa_qW t): survival of |+_c g_q 0_q>
/// with both atoms on resonance and the switch off.
double quiescent_population(const SystemParams& params, double t);

namespace constants {
inline constexpr double hbar = 1.054571817e-34;        // J s (CODATA 2018)
inline constexpr double epsilon0 = 8.8541878128e-12;   // F / m (CODATA 2018)
}  // namespace constants

/// Omega = mu sqrt(omega / (2 hbar eps0 V)) in SI units.
double estimate_coupling(double dipole_moment, double transition_frequency, double mode_volume);

/// Q = omega / kappa. Throws std::domain_error for kappa == 0.
double quality_factor(double omega, double kappa);

}  // namespace qswitch
