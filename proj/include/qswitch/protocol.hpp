#pragma once

// Experiment orchestration: state preparation, the transient population map
// over a grid of fixed gate detunings, the adiabatic Q-switch sweep, and the
// pulse / oscillation metrics read off their trajectories.

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qswitch/dynamics.hpp"

namespace qswitch {

enum class InitialState { bare_photon, dressed_plus, ground };

/// bare_photon: |g_c 1_c g_q 0_q 0_W>. dressed_plus: |+_c g_q 0_q 0_W> at
/// det.delta_c. ground: all atoms in g, no photons. The pump pulse is not
/// simulated; this stands in for it.
/// Throws std::invalid_argument when the basis lacks the required state.
DensityMatrix prepare_state(InitialState kind, const SystemParams& params, const Detunings& det,
                            const BasisPtr& basis);

/// The five one-quantum bare states in basis order:
/// |e_c 0_c>, |g_c 1_c>, |e_q 0_q>, |g_q 1_q>, |1_W>.
std::vector<BareLabel> one_quantum_labels();

struct TransientMap {
    std::vector<double> delta_q_grid;
    std::vector<double> time_grid;
    std::vector<BareLabel> states;
    /// surfaces[state][grid point][time sample].
    std::vector<std::vector<std::vector<double>>> surfaces;
    double t_max = 0.0;
    double step = 0.0;
};

struct TransientOptions {
    double delta_c = 0.0;
    int n_max = 1;
    /// Total-quanta manifold to evolve in; nullopt for the full truncated space.
    std::optional<int> manifold = 1;
    /// Samples every `sample_stride` integrator steps (0: ~2000 samples).
    std::size_t sample_stride = 0;
    int threads = 1;
};

/// One evolve() per grid point from bare_photon at fixed Delta_q.
TransientMap run_transient_map(const SystemParams& params, std::span<const double> delta_q_grid,
                               double t_max, double dt, const TransientOptions& options = {});

struct SurfacePeak {
    double value = 0.0;
    double delta_q = 0.0;
    double time = 0.0;
};

/// Maximum of one surface over grid points in [dq_lo, dq_hi] and times <= t_limit.
SurfacePeak surface_peak(const TransientMap& map, std::size_t state, double dq_lo, double dq_hi,
                         double t_limit = std::numeric_limits<double>::infinity());

/// Running maximum of the surface inside [dq_lo, dq_hi] as a function of the
/// time limit: entry k is the peak over times <= time_grid[k].
std::vector<double> peak_versus_time(const TransientMap& map, std::size_t state, double dq_lo, double dq_hi);

struct PulseRecord {
    Trajectory trajectory;
    std::vector<double> times;
    std::vector<double> delta_q;
    std::vector<double> rho_ww;
    /// Exact d rho_WW / dt from the master equation at each sample.
    std::vector<double> intensity;
    /// One-quantum eigenvalues (ascending) at each sample's Delta_q.
    std::vector<std::vector<double>> eigenvalue_track;
    /// Simpson integral of `intensity` over the record.
    double integral = 0.0;
    double peak_time = 0.0;
    SystemParams params;
};

struct SwitchOptions {
    /// 0: about 10000 samples over the schedule.
    std::size_t sample_stride = 0;
    bool enforce_quality = true;
};

/// Runs the schedule from dressed_plus in the one-quantum manifold. Throws ConfigError if the schedule's
/// Delta_q range does not contain the gate-defined resonance -delta + Omega_c.
PulseRecord run_switch_protocol(const SystemParams& params, const SweepSchedule& schedule, double dt,
                                const SwitchOptions& options = {});

struct Oscillation {
    bool found = false;
    /// Angular frequency of the series itself: a population sin^2(W t)
    /// oscillates at 2W.
    double angular_frequency = 0.0;
    double peak_to_floor = 0.0;
    std::string diagnostic;
};

/// Dominant angular frequency of a uniformly sampled series: DFT of the
/// mean-subtracted, Hann-windowed series (zero padded x8), refined by a
/// parabola through the three bins around the peak. Not found when the peak
/// is under 5x the median spectral floor or the window holds fewer than ten
/// periods.
Oscillation extract_oscillation_frequency(std::span<const double> series, double sample_spacing);

struct PulseMetrics {
    double integral = 0.0;
    double emitted = 0.0;  // rho_WW(T) - rho_WW(0)
    double peak_time = 0.0;
    double peak_intensity = 0.0;
    bool widths_defined = false;
    double fwhm = 0.0;
    double rise_width = 0.0;  // peak_time - left half-maximum crossing
    double fall_width = 0.0;  // right half-maximum crossing - peak_time
    double width_ratio = 0.0; // rise / fall
    /// Time the sweep first enters [-delta + Omega_c - 5J, -delta + Omega_c + 5J].
    double window_entry_time = 0.0;
    /// rho_WW accumulated before window entry.
    double quiescent_loss = 0.0;
};

PulseMetrics pulse_metrics(const PulseRecord& record);

/// Composite Simpson rule on uniform samples; an odd interval count closes
/// with the 3/8 rule, a single interval with the trapezoid.
double integrate_uniform(std::span<const double> values, double spacing);

}  // namespace qswitch
