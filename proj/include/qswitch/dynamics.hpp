#pragma once

// Lindblad master-equation integration for the cavity / gate / waveguide
// system with a time-dependent gate detuning.

#include <optional>
#include <vector>

#include "qswitch/model.hpp"

namespace qswitch {

class DensityMatrix {
public:
    DensityMatrix(BasisPtr basis, Matrix entries);

    static DensityMatrix pure(BasisPtr basis, const Vector& state);
    static DensityMatrix from_label(BasisPtr basis, const BareLabel& label);

    const BasisIndex& basis() const noexcept { return *basis_; }
    const BasisPtr& basis_ptr() const noexcept { return basis_; }
    const Matrix& matrix() const noexcept { return rho_; }
    Eigen::Index dim() const noexcept { return rho_.rows(); }

    double trace() const { return rho_.trace().real(); }
    double population(const BareLabel& label) const;
    /// max |rho - rho^dag|.
    double hermiticity_error() const;
    /// Smallest eigenvalue of the Hermitian part.
    double min_eigenvalue() const;

    /// Hermitian within 1e-10, trace within 1e-9 of 1, min eigenvalue > -1e-8.
    bool is_valid() const;

private:
    BasisPtr basis_;
    Matrix rho_;
};

enum class Profile { constant, linear };

struct Segment {
    double duration = 0.0;
    double start = 0.0;
    double end = 0.0;
    Profile profile = Profile::linear;
};

/// Piecewise gate-detuning program Delta_q(t) with a fixed Delta_c.
class SweepSchedule {
public:
    /// Throws std::invalid_argument for empty schedules, non-positive
    /// durations, constant segments with start != end, or jumps between
    /// segments.
    SweepSchedule(std::vector<Segment> segments, double delta_c = 0.0);

    static SweepSchedule hold(double delta_q, double duration, double delta_c = 0.0);
    static SweepSchedule linear(double from, double to, double duration, double delta_c = 0.0);

    /// Delta_q(t); held at the end value past the last segment.
    double delta_q(double t) const;
    double delta_c() const noexcept { return delta_c_; }
    double duration() const noexcept { return duration_; }
    double min_delta_q() const;
    double max_delta_q() const;
    const std::vector<Segment>& segments() const noexcept { return segments_; }

private:
    std::vector<Segment> segments_;
    double delta_c_;
    double duration_ = 0.0;
};

struct Trajectory {
    BasisPtr basis;
    std::vector<double> times;
    std::vector<double> delta_q;
    /// Diagonal of rho at each sample, ordered like the basis.
    std::vector<std::vector<double>> populations;
    /// Full rho at each sample, when requested.
    std::vector<Matrix> states;
    std::vector<double> trace_error;
    std::vector<double> herm_error;
    std::vector<double> min_eigenvalue;
    /// Integrator step actually used (<= the requested dt).
    double step = 0.0;
    std::size_t steps = 0;
    std::optional<DensityMatrix> final_state;
};

/// -i[H, rho] + C rho C^dag - {C^dag C, rho}/2. C already carries its rate.
/// Throws std::invalid_argument on dimension mismatch.
Matrix lindblad_rhs(const Matrix& rho, const Matrix& hamiltonian, const Matrix& collapse);

struct EvolveOptions {
    /// Record every `sample_stride` steps; 0 picks ~2000 samples per run.
    std::size_t sample_stride = 0;
    bool keep_states = false;
    /// Raise NumericalError when trace drift or negativity exceeds 1e-6.
    bool enforce_quality = true;
};

/// Largest admissible step: 0.05 / max(|omega_c|, |omega_q|, Omega_c, Omega_q, kappa_cq, kappa_qW).
double max_stable_step(const SystemParams& params);

/// Fixed-step classical RK4 of the master equation from rho0 over the whole
/// schedule. H(t) differs between steps only in the gate-atom energy, which
/// is updated in place; stage times t, t + h/2, t + h use Delta_q at those
/// times. The step count is rounded up to a multiple of the stride so
/// samples are uniform.
Trajectory evolve(const DensityMatrix& rho0, const SystemParams& params, const SweepSchedule& schedule,
                  double dt, const EvolveOptions& options = {});

/// Population series of one bare state. Throws std::out_of_range for labels
/// outside the trajectory basis.
std::vector<double> population(const Trajectory& trajectory, const BareLabel& label);

}  // namespace qswitch
