#include "qswitch/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

#include "qswitch/error.hpp"

namespace qswitch {

DensityMatrix::DensityMatrix(BasisPtr basis, Matrix entries) : basis_(std::move(basis)), rho_(std::move(entries)) {
    if (!basis_) throw std::invalid_argument("density matrix without basis");
    const auto n = static_cast<Eigen::Index>(basis_->size());
    if (rho_.rows() != n || rho_.cols() != n)
        throw std::invalid_argument("density matrix dimension does not match basis");
}

DensityMatrix DensityMatrix::pure(BasisPtr basis, const Vector& state) {
    const double norm = state.norm();
    if (!(norm > 0)) throw std::invalid_argument("pure state must be nonzero");
    const Vector psi = state / norm;
    return {std::move(basis), psi * psi.adjoint()};
}

DensityMatrix DensityMatrix::from_label(BasisPtr basis, const BareLabel& label) {
    const auto i = static_cast<Eigen::Index>(basis->index_of(label));
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(basis->size()));
    psi(i) = 1.0;
    return pure(std::move(basis), psi);
}

double DensityMatrix::population(const BareLabel& label) const {
    const auto i = static_cast<Eigen::Index>(basis_->index_of(label));
    return rho_(i, i).real();
}

double DensityMatrix::hermiticity_error() const {
    return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    const Matrix herm = 0.5 * (rho_ + rho_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool DensityMatrix::is_valid() const {
    return hermiticity_error() <= 1e-10 && std::abs(trace() - 1.0) <= 1e-9 && min_eigenvalue() > -1e-8;
}

SweepSchedule::SweepSchedule(std::vector<Segment> segments, double delta_c)
    : segments_(std::move(segments)), delta_c_(delta_c) {
    if (segments_.empty()) throw std::invalid_argument("sweep schedule needs at least one segment");
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const auto& s = segments_[i];
        if (!(s.duration > 0)) throw std::invalid_argument("segment durations must be positive");
        if (s.profile == Profile::constant && s.start != s.end)
            throw std::invalid_argument("constant segment must have start == end");
        if (i > 0 && segments_[i - 1].end != s.start)
            throw std::invalid_argument("delta_q must be continuous across segment boundaries");
        duration_ += s.duration;
    }
}

SweepSchedule SweepSchedule::hold(double delta_q, double duration, double delta_c) {
    return SweepSchedule({{duration, delta_q, delta_q, Profile::constant}}, delta_c);
}

SweepSchedule SweepSchedule::linear(double from, double to, double duration, double delta_c) {
    return SweepSchedule({{duration, from, to, Profile::linear}}, delta_c);
}

double SweepSchedule::delta_q(double t) const {
    double t0 = 0;
    for (const auto& s : segments_) {
        if (t <= t0 + s.duration) {
            if (s.profile == Profile::constant) return s.start;
            const double f = std::clamp((t - t0) / s.duration, 0.0, 1.0);
            return s.start + (s.end - s.start) * f;
        }
        t0 += s.duration;
    }
    return segments_.back().end;
}

double SweepSchedule::min_delta_q() const {
    double m = segments_.front().start;
    for (const auto& s : segments_) m = std::min({m, s.start, s.end});
    return m;
}

double SweepSchedule::max_delta_q() const {
    double m = segments_.front().start;
    for (const auto& s : segments_) m = std::max({m, s.start, s.end});
    return m;
}

Matrix lindblad_rhs(const Matrix& rho, const Matrix& h, const Matrix& c) {
    if (rho.rows() != rho.cols() || h.rows() != rho.rows() || h.cols() != rho.cols() ||
        c.rows() != rho.rows() || c.cols() != rho.cols())
        throw std::invalid_argument("lindblad_rhs: dimension mismatch");
    const Complex i(0, 1);
    const Matrix cdc = c.adjoint() * c;
    Matrix out = -i * (h * rho - rho * h);
    out += c * rho * c.adjoint();
    out -= 0.5 * (cdc * rho + rho * cdc);
    return out;
}

double max_stable_step(const SystemParams& p) {
    const double f = std::max({std::abs(p.omega_c), std::abs(p.omega_q), p.rabi_c, p.rabi_q, p.kappa_cq, p.kappa_qw});
    return f > 0 ? 0.05 / f : std::numeric_limits<double>::infinity();
}

namespace {

using Sparse = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

// RHS with H_eff = H - (i/2) C^dag C, so that for Hermitian rho
// L(rho) = -i (H_eff rho - (H_eff rho)^dag) + C rho C^dag.
class Liouvillian {
public:
    Liouvillian(const SystemParams& params, double delta_c, const BasisPtr& basis) : params_(params) {
        auto parts = build_hamiltonian_parts(params, delta_c, basis);
        const Matrix c = build_collapse_operator(params, basis).matrix();
        Matrix heff = parts.fixed.matrix() - Complex(0, 0.5) * (c.adjoint() * c);
        const Eigen::VectorXd gate = parts.gate_excited.matrix().diagonal().real();

        const Eigen::Index n = heff.rows();
        std::vector<Eigen::Triplet<Complex>> trip;
        for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index k = 0; k < n; ++k)
                if (r == k || heff(r, k) != Complex(0)) trip.emplace_back(r, k, heff(r, k));
        heff_.resize(n, n);
        heff_.setFromTriplets(trip.begin(), trip.end());
        heff_.makeCompressed();
        for (Eigen::Index r = 0; r < n; ++r) {
            if (gate(r) != 0.0) {
                gate_entries_.push_back(&heff_.coeffRef(r, r));
                gate_base_.push_back(heff(r, r));
            }
        }

        jump_ = c.sparseView();
        jump_adj_ = Matrix(c.adjoint()).sparseView();
        has_jump_ = jump_.nonZeros() > 0;
        work_.resize(n, n);
        jtmp_.resize(n, n);
        jterm_.resize(n, n);
    }

    void set_delta_q(double delta_q) {
        if (delta_q == current_) return;
        current_ = delta_q;
        const double eps_q = params_.omega_q + delta_q;
        for (std::size_t k = 0; k < gate_entries_.size(); ++k) *gate_entries_[k] = gate_base_[k] + eps_q;
    }

    void apply(const Matrix& rho, Matrix& out) {
        work_.noalias() = heff_ * rho;
        out = Complex(0, -1) * (work_ - work_.adjoint());
        if (has_jump_) {
            jtmp_.noalias() = jump_ * rho;
            jterm_.noalias() = jtmp_ * jump_adj_;
            out += 0.5 * (jterm_ + jterm_.adjoint());
        }
    }

private:
    SystemParams params_;
    Sparse heff_;
    Sparse jump_;
    Sparse jump_adj_;
    bool has_jump_ = false;
    std::vector<Complex*> gate_entries_;
    std::vector<Complex> gate_base_;
    double current_ = std::numeric_limits<double>::quiet_NaN();
    Matrix work_, jtmp_, jterm_;
};

}  // namespace

Trajectory evolve(const DensityMatrix& rho0, const SystemParams& params, const SweepSchedule& schedule,
                  double dt, const EvolveOptions& options) {
    if (!(dt > 0)) throw std::invalid_argument("evolve: dt must be positive");
    const double bound = max_stable_step(params);
    if (dt > bound * (1 + 1e-12)) {
        std::ostringstream s;
        s << "evolve: dt = " << dt << " exceeds the stability bound " << bound;
        throw std::invalid_argument(s.str());
    }

    const double total = schedule.duration();
    const auto raw_steps = static_cast<std::size_t>(std::ceil(total / dt * (1 - 1e-12)));
    std::size_t stride = options.sample_stride;
    if (stride == 0) stride = std::max<std::size_t>(1, (raw_steps + 1999) / 2000);
    const std::size_t steps = std::max<std::size_t>(1, (raw_steps + stride - 1) / stride) * stride;
    const double h = total / double(steps);

    Liouvillian L(params, schedule.delta_c(), rho0.basis_ptr());
    const Eigen::Index n = rho0.dim();
    Matrix rho = rho0.matrix();
    Matrix k1(n, n), k2(n, n), k3(n, n), k4(n, n), stage(n, n);

    Trajectory traj;
    traj.basis = rho0.basis_ptr();
    traj.step = h;
    traj.steps = steps;
    const std::size_t samples = steps / stride + 1;
    traj.times.reserve(samples);
    traj.populations.reserve(samples);

    std::optional<NumericalError> error;
    auto record = [&](std::size_t step) {
        const double t = double(step) * h;
        traj.times.push_back(t);
        traj.delta_q.push_back(schedule.delta_q(t));
        std::vector<double> pops(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i) pops[static_cast<std::size_t>(i)] = rho(i, i).real();
        traj.populations.push_back(std::move(pops));
        if (options.keep_states) traj.states.push_back(rho);

        const double tr = std::abs(rho.trace().real() - 1.0);
        const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
        const Matrix hp = 0.5 * (rho + rho.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> solver(hp, Eigen::EigenvaluesOnly);
        const double mine = solver.eigenvalues().minCoeff();
        traj.trace_error.push_back(tr);
        traj.herm_error.push_back(herm);
        traj.min_eigenvalue.push_back(mine);
        if (!error && (tr > 1e-6 || mine < -1e-6)) {
            std::ostringstream s;
            s << "integration quality lost at t = " << t << ": trace error " << tr << ", min eigenvalue " << mine;
            error.emplace(s.str(), t);
        }
    };

    record(0);
    for (std::size_t step = 0; step < steps; ++step) {
        const double t = double(step) * h;
        L.set_delta_q(schedule.delta_q(t));
        L.apply(rho, k1);
        L.set_delta_q(schedule.delta_q(t + 0.5 * h));
        stage = rho + (0.5 * h) * k1;
        L.apply(stage, k2);
        stage = rho + (0.5 * h) * k2;
        L.apply(stage, k3);
        L.set_delta_q(schedule.delta_q(t + h));
        stage = rho + h * k3;
        L.apply(stage, k4);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if ((step + 1) % stride == 0) record(step + 1);
    }

    if (error && options.enforce_quality) throw *error;
    traj.final_state.emplace(rho0.basis_ptr(), rho);
    return traj;
}

std::vector<double> population(const Trajectory& trajectory, const BareLabel& label) {
    const auto i = trajectory.basis->index_of(label);
    std::vector<double> out;
    out.reserve(trajectory.populations.size());
    for (const auto& p : trajectory.populations) out.push_back(p[i]);
    return out;
}

}  // namespace qswitch
