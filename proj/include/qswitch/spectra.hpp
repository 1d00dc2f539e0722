#pragma once

// Exact diagonalisation of H over a grid of gate detunings, with every level
// tagged by its (conserved) total number of quanta, and location of the
// avoided crossings between cavity and gate branches.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qswitch/model.hpp"

namespace qswitch {

struct SpectrumTable {
    std::vector<double> delta_q_grid;
    /// Per grid point, all eigenvalues ascending.
    std::vector<std::vector<double>> eigenvalues;
    /// Total-quanta tag of each eigenvalue.
    std::vector<std::vector<int>> manifold_tags;
    /// Curve index within the manifold after overlap-based curve following.
    std::vector<std::vector<int>> branches;
    /// Eigenvectors in the full (or filtered) basis, columns matching
    /// `eigenvalues`. Only filled when requested.
    std::vector<Matrix> eigenvectors;
    BasisPtr basis;
    /// Per-point solver failures; empty on success.
    std::vector<std::string> diagnostics;

    /// Ascending eigenvalues of one manifold at grid point `i`.
    std::vector<double> manifold_levels(std::size_t i, int manifold) const;
};

struct SweepOptions {
    int n_max = 2;
    /// Restrict to one total-quanta manifold.
    std::optional<int> manifold;
    int threads = 1;
    bool keep_eigenvectors = false;
};

/// Requires a nonempty, strictly increasing grid (std::invalid_argument
/// otherwise).
SpectrumTable eigen_sweep(const SystemParams& params, double delta_c, std::span<const double> grid,
                          const SweepOptions& options = {});

struct AntiCrossing {
    double location = 0.0;
    double gap = 0.0;
    /// Adiabatic (ascending-order) indices of the two levels within the manifold.
    int lower_branch = 0;
    int upper_branch = 0;
    /// Gap indistinguishable from zero: the levels actually cross.
    bool true_crossing = false;
};

/// Narrowest avoided crossing of `manifold` inside [lo, hi]: among adjacent
/// level pairs whose gap is smallest at an interior grid point, the one with
/// the smallest gap, refined by a parabola through gap^2 at the three nearest
/// grid points. Returns nullopt when no pair has an interior minimum or the
/// window holds fewer than three points.
std::optional<AntiCrossing> find_anticrossing(const SpectrumTable& table, int manifold, double lo,
                                              double hi);

std::vector<double> linspace(double a, double b, std::size_t n);

}  // namespace qswitch
