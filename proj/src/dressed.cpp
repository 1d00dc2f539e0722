#include "qswitch/dressed.hpp"

#include <cmath>
#include <stdexcept>

namespace qswitch {

double generalized_rabi(double coupling, double detuning) {
    return std::hypot(0.5 * detuning, coupling);
}

namespace {

// Delta/2 +- chi without cancellation; unlike dressed_state this is defined
// (as the bare energies) at Omega = 0.
double branch_energy(double omega, double delta, Branch sign) {
    const double chi = generalized_rabi(omega, delta);
    if (sign == Branch::plus) {
        if (delta > 0) return 0.5 * delta + chi;
        const double d = chi - 0.5 * delta;
        return d > 0 ? omega * omega / d : 0.0;
    }
    if (delta < 0) return 0.5 * delta - chi;
    const double d = chi + 0.5 * delta;
    return d > 0 ? -omega * omega / d : 0.0;
}

}  // namespace

DressedBranch dressed_state(double coupling, double detuning, Branch sign) {
    if (coupling < 0) throw std::invalid_argument("dressed_state: coupling must be >= 0");
    if (coupling == 0 && detuning == 0)
        throw std::domain_error("dressed_state: degenerate dressing (Omega = Delta = 0)");

    const double half = 0.5 * detuning;
    const double chi = generalized_rabi(coupling, detuning);

    // Two proportional forms exist for each branch; pick the one without
    // cancellation. (-D/2 + chi)(D/2 + chi) = Omega^2.
    double g1 = 0, e0 = 0;
    if (sign == Branch::plus) {
        if (detuning > 0) {
            g1 = coupling;
            e0 = chi + half;
        } else {
            g1 = chi - half;
            e0 = coupling;
        }
    } else {
        if (detuning < 0) {
            g1 = -coupling;
            e0 = chi - half;
        } else {
            g1 = -(chi + half);
            e0 = coupling;
        }
    }
    const double norm = std::hypot(g1, e0);
    return {sign, Complex(g1 / norm), Complex(e0 / norm), branch_energy(coupling, detuning, sign)};
}

ResonanceEnergies gate_resonance_energies(const SystemParams& p, const Detunings& det) {
    const double delta = p.delta();
    return {branch_energy(p.rabi_c, det.delta_c, Branch::plus), branch_energy(p.rabi_c, det.delta_c, Branch::minus),
            delta + branch_energy(p.rabi_q, det.delta_q, Branch::plus),
            delta + branch_energy(p.rabi_q, det.delta_q, Branch::minus)};
}

double effective_coupling(const SystemParams& p) {
    const double delta = p.delta();
    if (!(delta > 0))
        throw std::domain_error("effective_coupling: requires delta > 0 (dispersive regime)");
    return p.kappa_cq * p.rabi_q / (std::sqrt(2.0) * delta);
}

double quiescent_population(const SystemParams& p, double t) {
    if (t < 0) throw std::invalid_argument("quiescent_population: t must be >= 0");
    const double delta = p.delta();
    if (!(delta > 0)) throw std::domain_error("quiescent_population: requires delta > 0");
    const double leak = p.kappa_cq * p.kappa_cq / (2.0 * delta * delta);
    return std::exp(-leak * p.kappa_qw * t);
}

double estimate_coupling(double dipole_moment, double transition_frequency, double mode_volume) {
    if (!(dipole_moment > 0) || !(transition_frequency > 0) || !(mode_volume > 0))
        throw std::domain_error("estimate_coupling: inputs must be positive");
    return dipole_moment *
           std::sqrt(transition_frequency / (2.0 * constants::hbar * constants::epsilon0 * mode_volume));
}

double quality_factor(double omega, double kappa) {
    if (kappa == 0) throw std::domain_error("quality_factor: kappa = 0 gives infinite Q");
    if (kappa < 0) throw std::invalid_argument("quality_factor: kappa must be positive");
    return omega / kappa;
}

}  // namespace qswitch
