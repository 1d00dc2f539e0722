#pragma once

#include <string>
#include <vector>

#include "qswitch/hilbert.hpp"

namespace qswitch {

/// Static model frequencies in one shared unit, hbar = 1.
struct SystemParams {
    double omega_c = 0.0;   // cavity photon frequency
    double omega_q = 0.0;   // gate photon frequency
    double rabi_c = 0.0;    // one-photon Rabi frequency, cavity atom
    double rabi_q = 0.0;    // one-photon Rabi frequency, gate atom
    double kappa_cq = 0.0;  // cavity <-> gate photon hopping
    double kappa_qw = 0.0;  // gate -> waveguide outcoupling rate

    double delta() const noexcept { return omega_q - omega_c; }

    bool operator==(const SystemParams&) const = default;
};

/// Atom detunings from their cavity mode. The atomic transition sits at
/// epsilon = omega + Delta, so a negative Delta_q pulls the gate atom down
/// towards the cavity and the gate-defined resonance is at
/// Delta_q = -delta + Omega_c.
struct Detunings {
    double delta_c = 0.0;
    double delta_q = 0.0;

    double epsilon_c(const SystemParams& p) const noexcept { return p.omega_c + delta_c; }
    double epsilon_q(const SystemParams& p) const noexcept { return p.omega_q + delta_q; }

    bool operator==(const Detunings&) const = default;
};

/// H = sum_a [eps_a |e><e|_a + omega_a a_a^dag a_a + Omega_a (sigma_a^- a_a^dag + sigma_a^+ a_a)]
///     + kappa_cq (a_q^dag a_c + a_c^dag a_q).
/// The waveguide mode carries no bare energy: it is reached only through the
/// quanta-conserving dissipator, so an offset there changes no population.
/// The result is exactly Hermitian.
ComplexOperator build_hamiltonian(const SystemParams& params, const Detunings& det,
                                  const BasisPtr& basis);

/// Parts of H split by their dependence on Delta_q:
/// H(Delta_q) = fixed + epsilon_q(Delta_q) * gate_excited.
struct HamiltonianParts {
    ComplexOperator fixed;
    ComplexOperator gate_excited;
};
HamiltonianParts build_hamiltonian_parts(const SystemParams& params, double delta_c,
                                         const BasisPtr& basis);

/// C = sqrt(kappa_qW) a_W^dag a_q.
ComplexOperator build_collapse_operator(const SystemParams& params, const BasisPtr& basis);

struct ParamDiagnostics {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;

    bool ok() const noexcept { return violations.empty(); }
};

/// Hard violations: negative or non-finite rates, delta < 0. Warning when
/// delta <= 5 max(Omega_c, Omega_q, kappa_cq), where the dispersive formulas
/// in dressed.hpp stop being quantitative.
ParamDiagnostics validate_params(const SystemParams& params);

}  // namespace qswitch
