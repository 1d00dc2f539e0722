#include "qswitch/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qswitch {

namespace {

// g (X + X^dag), with the mirrored entries written from the same values.
void add_hermitian_pair(Matrix& h, double g, const Matrix& x) {
    if (g == 0.0) return;
    h += g * x;
    h += g * x.adjoint();
}

}  // namespace

HamiltonianParts build_hamiltonian_parts(const SystemParams& p, double delta_c,
                                         const BasisPtr& basis) {
    using S = Subsystem;
    const double eps_c = p.omega_c + delta_c;

    Matrix h = eps_c * excited_projector(basis, S::atom_c).matrix();
    h += p.omega_c * ladder_product(basis, {{S::photon_c, true}, {S::photon_c, false}}).matrix();
    h += p.omega_q * ladder_product(basis, {{S::photon_q, true}, {S::photon_q, false}}).matrix();

    add_hermitian_pair(h, p.rabi_c, ladder_product(basis, {{S::atom_c, false}, {S::photon_c, true}}).matrix());
    add_hermitian_pair(h, p.rabi_q, ladder_product(basis, {{S::atom_q, false}, {S::photon_q, true}}).matrix());
    add_hermitian_pair(h, p.kappa_cq, ladder_product(basis, {{S::photon_q, true}, {S::photon_c, false}}).matrix());

    return {ComplexOperator(basis, std::move(h)), excited_projector(basis, S::atom_q)};
}

ComplexOperator build_hamiltonian(const SystemParams& params, const Detunings& det,
                                  const BasisPtr& basis) {
    auto parts = build_hamiltonian_parts(params, det.delta_c, basis);
    Matrix h = parts.fixed.matrix() + det.epsilon_q(params) * parts.gate_excited.matrix();
    return {basis, std::move(h)};
}

ComplexOperator build_collapse_operator(const SystemParams& params, const BasisPtr& basis) {
    using S = Subsystem;
    auto x = ladder_product(basis, {{S::photon_W, true}, {S::photon_q, false}});
    return {basis, std::sqrt(params.kappa_qw) * x.matrix()};
}

ParamDiagnostics validate_params(const SystemParams& p) {
    ParamDiagnostics d;
    auto check_rate = [&](const char* name, double v) {
        if (!std::isfinite(v)) d.violations.push_back(std::string(name) + " is not finite");
        else if (v < 0) {
            std::ostringstream s;
            s << name << " = " << v << " is negative";
            d.violations.push_back(s.str());
        }
    };
    if (!std::isfinite(p.omega_c)) d.violations.push_back("omega_c is not finite");
    if (!std::isfinite(p.omega_q)) d.violations.push_back("omega_q is not finite");
    check_rate("rabi_c", p.rabi_c);
    check_rate("rabi_q", p.rabi_q);
    check_rate("kappa_cq", p.kappa_cq);
    check_rate("kappa_qw", p.kappa_qw);

    const double delta = p.delta();
    if (delta < 0) {
        std::ostringstream s;
        s << "delta = omega_q - omega_c = " << delta << " is negative";
        d.violations.push_back(s.str());
    }

    const double scale = std::max({p.rabi_c, p.rabi_q, p.kappa_cq});
    if (delta >= 0 && scale > 0 && delta <= 5 * scale) {
        std::ostringstream s;
        s << "delta/max(Omega_c, Omega_q, kappa_cq) = " << delta / scale
          << " <= 5: dispersive formulas (effective coupling, quiescent population) are approximate";
        d.warnings.push_back(s.str());
    }
    return d;
}

}  // namespace qswitch
