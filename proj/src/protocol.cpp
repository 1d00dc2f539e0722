#include "qswitch/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qswitch/dressed.hpp"
#include "qswitch/error.hpp"
#include "qswitch/parallel.hpp"
#include "qswitch/spectra.hpp"

namespace qswitch {

namespace {

const BareLabel kPhotonC{false, 1, false, 0, 0};
const BareLabel kAtomC{true, 0, false, 0, 0};
const BareLabel kWaveguide{false, 0, false, 0, 1};
const BareLabel kGround{};

}  // namespace

std::vector<BareLabel> one_quantum_labels() {
    return {kAtomC, kPhotonC, {false, 0, true, 0, 0}, {false, 0, false, 1, 0}, kWaveguide};
}

DensityMatrix prepare_state(InitialState kind, const SystemParams& params, const Detunings& det,
                            const BasisPtr& basis) {
    auto require = [&](const BareLabel& l) {
        auto i = basis->find(l);
        if (!i) throw std::invalid_argument("prepare_state: basis lacks state " + l.name());
        return static_cast<Eigen::Index>(*i);
    };
    switch (kind) {
        case InitialState::bare_photon:
            require(kPhotonC);
            return DensityMatrix::from_label(basis, kPhotonC);
        case InitialState::ground:
            require(kGround);
            return DensityMatrix::from_label(basis, kGround);
        case InitialState::dressed_plus: {
            const auto branch = dressed_state(params.rabi_c, det.delta_c, Branch::plus);
            Vector psi = Vector::Zero(static_cast<Eigen::Index>(basis->size()));
            psi(require(kPhotonC)) = branch.amplitude_g1;
            psi(require(kAtomC)) = branch.amplitude_e0;
            return DensityMatrix::pure(basis, psi);
        }
    }
    throw std::invalid_argument("prepare_state: unknown kind");
}

TransientMap run_transient_map(const SystemParams& params, std::span<const double> grid, double t_max,
                               double dt, const TransientOptions& options) {
    if (grid.empty()) throw std::invalid_argument("run_transient_map: empty grid");
    if (!(t_max > 0)) throw std::invalid_argument("run_transient_map: t_max must be positive");

    const auto basis = build_basis(options.n_max, options.manifold);
    const auto rho0 = prepare_state(InitialState::bare_photon, params, {options.delta_c, 0.0}, basis);

    TransientMap map;
    map.delta_q_grid.assign(grid.begin(), grid.end());
    map.states = one_quantum_labels();
    map.t_max = t_max;

    std::vector<Trajectory> runs(grid.size());
    parallel_for(grid.size(), options.threads, [&](std::size_t i) {
        EvolveOptions eo;
        eo.sample_stride = options.sample_stride;
        runs[i] = evolve(rho0, params, SweepSchedule::hold(grid[i], t_max, options.delta_c), dt, eo);
    });

    map.time_grid = runs.front().times;
    map.step = runs.front().step;
    map.surfaces.assign(map.states.size(), {});
    for (std::size_t s = 0; s < map.states.size(); ++s)
        for (auto& run : runs) map.surfaces[s].push_back(population(run, map.states[s]));
    return map;
}

SurfacePeak surface_peak(const TransientMap& map, std::size_t state, double dq_lo, double dq_hi, double t_limit) {
    SurfacePeak best{-1.0, 0.0, 0.0};
    const auto& surface = map.surfaces.at(state);
    for (std::size_t i = 0; i < map.delta_q_grid.size(); ++i) {
        const double dq = map.delta_q_grid[i];
        if (dq < dq_lo || dq > dq_hi) continue;
        for (std::size_t k = 0; k < map.time_grid.size() && map.time_grid[k] <= t_limit; ++k)
            if (surface[i][k] > best.value) best = {surface[i][k], dq, map.time_grid[k]};
    }
    if (best.value < 0) throw std::invalid_argument("surface_peak: no grid point in window");
    return best;
}

std::vector<double> peak_versus_time(const TransientMap& map, std::size_t state, double dq_lo, double dq_hi) {
    std::vector<double> running(map.time_grid.size(), 0.0);
    const auto& surface = map.surfaces.at(state);
    for (std::size_t i = 0; i < map.delta_q_grid.size(); ++i) {
        const double dq = map.delta_q_grid[i];
        if (dq < dq_lo || dq > dq_hi) continue;
        for (std::size_t k = 0; k < running.size(); ++k) running[k] = std::max(running[k], surface[i][k]);
    }
    for (std::size_t k = 1; k < running.size(); ++k) running[k] = std::max(running[k], running[k - 1]);
    return running;
}

double integrate_uniform(std::span<const double> v, double h) {
    const std::size_t m = v.size() < 2 ? 0 : v.size() - 1;  // intervals
    if (m == 0) return 0.0;
    if (m == 1) return 0.5 * h * (v[0] + v[1]);
    auto simpson = [&](std::size_t end) {  // intervals [0, end), end even
        double s = v[0] + v[end];
        for (std::size_t i = 1; i < end; ++i) s += (i % 2 ? 4.0 : 2.0) * v[i];
        return s * h / 3.0;
    };
    if (m % 2 == 0) return simpson(m);
    // Odd count: Simpson 3/8 on the last three intervals.
    const double tail = 3.0 * h / 8.0 * (v[m - 3] + 3 * v[m - 2] + 3 * v[m - 1] + v[m]);
    return (m > 3 ? simpson(m - 3) : 0.0) + tail;
}

PulseRecord run_switch_protocol(const SystemParams& params, const SweepSchedule& schedule, double dt,
                                const SwitchOptions& options) {
    const double resonance = -params.delta() + params.rabi_c;
    if (resonance < schedule.min_delta_q() || resonance > schedule.max_delta_q()) {
        std::ostringstream s;
        s << "sweep window [" << schedule.min_delta_q() << ", " << schedule.max_delta_q()
          << "] excludes the gate resonance delta_q = " << resonance;
        throw ConfigError(s.str());
    }

    const auto basis = build_basis(1, 1);
    const auto rho0 = prepare_state(InitialState::dressed_plus, params, {schedule.delta_c(), 0.0}, basis);
    EvolveOptions eo;
    eo.sample_stride = options.sample_stride;
    if (eo.sample_stride == 0) {
        // Finer than evolve's default so Simpson resolves the pulse to ~1e-7.
        const double raw = std::ceil(schedule.duration() / dt * (1 - 1e-12));
        eo.sample_stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(raw / 10000.0)));
    }
    eo.keep_states = true;
    eo.enforce_quality = options.enforce_quality;

    PulseRecord rec;
    rec.params = params;
    rec.trajectory = evolve(rho0, params, schedule, dt, eo);
    const auto& traj = rec.trajectory;
    rec.times = traj.times;
    rec.delta_q = traj.delta_q;
    rec.rho_ww = population(traj, kWaveguide);

    const auto w = static_cast<Eigen::Index>(basis->index_of(kWaveguide));
    const Matrix c = build_collapse_operator(params, basis).matrix();
    auto parts = build_hamiltonian_parts(params, schedule.delta_c(), basis);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const Matrix h = parts.fixed.matrix() + (params.omega_q + traj.delta_q[k]) * parts.gate_excited.matrix();
        rec.intensity.push_back(lindblad_rhs(traj.states[k], h, c)(w, w).real());
    }

    std::vector<double> grid = rec.delta_q;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    SweepOptions so;
    so.n_max = 1;
    so.manifold = 1;
    const auto spectrum = eigen_sweep(params, schedule.delta_c(), grid, so);
    for (double dq : rec.delta_q) {
        const auto i = static_cast<std::size_t>(std::lower_bound(grid.begin(), grid.end(), dq) - grid.begin());
        rec.eigenvalue_track.push_back(spectrum.eigenvalues[i]);
    }

    const double spacing = rec.times.size() > 1 ? rec.times[1] - rec.times[0] : 0.0;
    rec.integral = integrate_uniform(rec.intensity, spacing);
    const auto peak = std::max_element(rec.intensity.begin(), rec.intensity.end());
    rec.peak_time = rec.times[static_cast<std::size_t>(peak - rec.intensity.begin())];
    return rec;
}

Oscillation extract_oscillation_frequency(std::span<const double> series, double spacing) {
    Oscillation out;
    const std::size_t n = series.size();
    if (n < 8 || !(spacing > 0)) {
        out.diagnostic = "series too short";
        return out;
    }
    double mean = 0;
    for (double v : series) mean += v;
    mean /= double(n);

    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double hann = 0.5 - 0.5 * std::cos(2 * std::numbers::pi * double(i) / double(n - 1));
        x[i] = (series[i] - mean) * hann;
    }

    const std::size_t padded = 8 * n;
    const std::size_t bins = padded / 2;
    std::vector<double> mag(bins + 1, 0.0);
    for (std::size_t k = 1; k <= bins; ++k) {
        const Complex w = std::polar(1.0, -2 * std::numbers::pi * double(k) / double(padded));
        Complex z = 1.0, acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += x[i] * z;
            z *= w;
        }
        mag[k] = std::abs(acc);
    }

    std::size_t kmax = 1;
    for (std::size_t k = 2; k <= bins; ++k)
        if (mag[k] > mag[kmax]) kmax = k;
    std::vector<double> sorted(mag.begin() + 1, mag.end());
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double floor = sorted[sorted.size() / 2];
    out.peak_to_floor = floor > 0 ? mag[kmax] / floor : (mag[kmax] > 0 ? INFINITY : 0.0);
    if (!(mag[kmax] > 5 * floor) || mag[kmax] == 0) {
        out.diagnostic = "no spectral peak above 5x the median floor";
        return out;
    }

    double shift = 0;
    if (kmax > 1 && kmax < bins) {
        const double a = mag[kmax - 1], b = mag[kmax], c = mag[kmax + 1];
        const double denom = a - 2 * b + c;
        if (denom != 0) shift = 0.5 * (a - c) / denom;
    }
    out.angular_frequency = 2 * std::numbers::pi * (double(kmax) + shift) / (double(padded) * spacing);
    const double periods = out.angular_frequency * spacing * double(n - 1) / (2 * std::numbers::pi);
    if (periods < 10) {
        std::ostringstream s;
        s << "window holds only " << periods << " periods (need >= 10)";
        out.diagnostic = s.str();
        return out;
    }
    out.found = true;
    return out;
}

PulseMetrics pulse_metrics(const PulseRecord& rec) {
    PulseMetrics m;
    const std::size_t n = rec.times.size();
    if (n == 0) return m;
    const double spacing = n > 1 ? rec.times[1] - rec.times[0] : 0.0;
    m.integral = integrate_uniform(rec.intensity, spacing);
    m.emitted = rec.rho_ww.back() - rec.rho_ww.front();

    const auto peak = static_cast<std::size_t>(
        std::max_element(rec.intensity.begin(), rec.intensity.end()) - rec.intensity.begin());
    m.peak_time = rec.times[peak];
    m.peak_intensity = rec.intensity[peak];

    if (m.peak_intensity > 0) {
        const double half = 0.5 * m.peak_intensity;
        std::optional<double> left, right;
        for (std::size_t i = peak; i-- > 0;) {
            if (rec.intensity[i] < half) {
                const double f = (half - rec.intensity[i]) / (rec.intensity[i + 1] - rec.intensity[i]);
                left = rec.times[i] + f * (rec.times[i + 1] - rec.times[i]);
                break;
            }
        }
        for (std::size_t i = peak + 1; i < n; ++i) {
            if (rec.intensity[i] < half) {
                const double f = (rec.intensity[i - 1] - half) / (rec.intensity[i - 1] - rec.intensity[i]);
                right = rec.times[i - 1] + f * (rec.times[i] - rec.times[i - 1]);
                break;
            }
        }
        if (left && right) {
            m.widths_defined = true;
            m.rise_width = m.peak_time - *left;
            m.fall_width = *right - m.peak_time;
            m.fwhm = *right - *left;
            m.width_ratio = m.rise_width / m.fall_width;
        }
    }

    const auto& p = rec.params;
    const double resonance = -p.delta() + p.rabi_c;
    const double j = p.delta() > 0 ? effective_coupling(p) : 0.0;
    m.window_entry_time = rec.times.back();
    m.quiescent_loss = m.emitted;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(rec.delta_q[i] - resonance) <= 5 * j) {
            m.window_entry_time = rec.times[i];
            m.quiescent_loss = rec.rho_ww[i] - rec.rho_ww.front();
            break;
        }
    }
    return m;
}

}  // namespace qswitch
