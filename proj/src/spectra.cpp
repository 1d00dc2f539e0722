#include "qswitch/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "qswitch/parallel.hpp"

namespace qswitch {

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = a;
        return v;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * double(i) / double(n - 1);
    return v;
}

std::vector<double> SpectrumTable::manifold_levels(std::size_t i, int manifold) const {
    std::vector<double> out;
    const auto& ev = eigenvalues.at(i);
    const auto& tags = manifold_tags.at(i);
    for (std::size_t k = 0; k < ev.size(); ++k)
        if (tags[k] == manifold) out.push_back(ev[k]);
    return out;
}

namespace {

struct Block {
    int quanta;
    BasisPtr basis;
    Matrix fixed;
    Eigen::VectorXd gate_diag;
    std::vector<Eigen::Index> embed;  // block index -> row in table basis
};

struct PointResult {
    std::vector<Eigen::VectorXd> values;  // per block
    std::vector<Matrix> vectors;          // per block
    std::string diagnostic;
};

// Greedy max-overlap matching between consecutive eigenvector sets.
std::vector<int> follow(const Matrix& prev, const Matrix& cur, const std::vector<int>& prev_branch) {
    const Eigen::Index d = cur.cols();
    Eigen::MatrixXd overlap = (prev.adjoint() * cur).cwiseAbs2();
    std::vector<int> branch(d, -1);
    std::vector<bool> used_prev(d, false);
    for (Eigen::Index step = 0; step < d; ++step) {
        double best = -1;
        Eigen::Index bj = 0, bk = 0;
        for (Eigen::Index j = 0; j < d; ++j) {
            if (used_prev[j]) continue;
            for (Eigen::Index k = 0; k < d; ++k) {
                if (branch[k] >= 0) continue;
                if (overlap(j, k) > best) {
                    best = overlap(j, k);
                    bj = j;
                    bk = k;
                }
            }
        }
        used_prev[bj] = true;
        branch[bk] = prev_branch[bj];
    }
    return branch;
}

}  // namespace

SpectrumTable eigen_sweep(const SystemParams& params, double delta_c, std::span<const double> grid,
                          const SweepOptions& options) {
    if (grid.empty()) throw std::invalid_argument("eigen_sweep: empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("eigen_sweep: grid must be strictly increasing");

    SpectrumTable table;
    table.delta_q_grid.assign(grid.begin(), grid.end());
    table.basis = build_basis(options.n_max, options.manifold);

    std::vector<Block> blocks;
    const int q_max = 2 + 3 * options.n_max;
    for (int q = 0; q <= q_max; ++q) {
        if (options.manifold && *options.manifold != q) continue;
        auto basis = build_basis(options.n_max, q);
        if (basis->size() == 0) continue;
        auto parts = build_hamiltonian_parts(params, delta_c, basis);
        Block b{q, basis, parts.fixed.matrix(), parts.gate_excited.matrix().diagonal().real(), {}};
        for (const auto& l : basis->labels())
            b.embed.push_back(static_cast<Eigen::Index>(table.basis->index_of(l)));
        blocks.push_back(std::move(b));
    }

    const std::size_t n = grid.size();
    std::vector<PointResult> results(n);
    parallel_for(n, options.threads, [&](std::size_t i) {
        auto& r = results[i];
        const double eps_q = params.omega_q + grid[i];
        for (const auto& b : blocks) {
            Matrix h = b.fixed;
            h.diagonal() += (eps_q * b.gate_diag).cast<Complex>();
            Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
            if (solver.info() != Eigen::Success) {
                r.diagnostic = "eigensolver failed at delta_q = " + std::to_string(grid[i]) +
                               " (manifold " + std::to_string(b.quanta) + ")";
                r.values.push_back(Eigen::VectorXd::Constant(h.rows(), std::numeric_limits<double>::quiet_NaN()));
                r.vectors.push_back(Matrix::Identity(h.rows(), h.cols()));
                continue;
            }
            r.values.push_back(solver.eigenvalues());
            r.vectors.push_back(solver.eigenvectors());
        }
    });

    // Sequential curve-following pass.
    std::vector<std::vector<std::vector<int>>> block_branch(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto d = static_cast<int>(blocks[b].basis->size());
        std::vector<int> first(d);
        std::iota(first.begin(), first.end(), 0);
        block_branch[b].push_back(first);
        for (std::size_t i = 1; i < n; ++i)
            block_branch[b].push_back(
                follow(results[i - 1].vectors[b], results[i].vectors[b], block_branch[b][i - 1]));
    }

    const auto dim = static_cast<Eigen::Index>(table.basis->size());
    table.eigenvalues.resize(n);
    table.manifold_tags.resize(n);
    table.branches.resize(n);
    if (options.keep_eigenvectors) table.eigenvectors.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& r = results[i];
        if (!r.diagnostic.empty()) table.diagnostics.push_back(r.diagnostic);
        std::vector<std::tuple<double, int, Eigen::Index, std::size_t>> levels;  // value, tag, local, block
        for (std::size_t b = 0; b < blocks.size(); ++b)
            for (Eigen::Index k = 0; k < r.values[b].size(); ++k)
                levels.emplace_back(r.values[b](k), blocks[b].quanta, k, b);
        std::sort(levels.begin(), levels.end(), [](const auto& x, const auto& y) {
            if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) < std::get<0>(y);
            if (std::get<1>(x) != std::get<1>(y)) return std::get<1>(x) < std::get<1>(y);
            return std::get<2>(x) < std::get<2>(y);
        });
        Matrix vecs;
        if (options.keep_eigenvectors) vecs = Matrix::Zero(dim, dim);
        Eigen::Index col = 0;
        for (const auto& [value, tag, local, b] : levels) {
            table.eigenvalues[i].push_back(value);
            table.manifold_tags[i].push_back(tag);
            table.branches[i].push_back(block_branch[b][i][local]);
            if (options.keep_eigenvectors) {
                for (Eigen::Index row = 0; row < r.vectors[b].rows(); ++row)
                    vecs(blocks[b].embed[row], col) = r.vectors[b](row, local);
            }
            ++col;
        }
        if (options.keep_eigenvectors) table.eigenvectors[i] = std::move(vecs);
        r = {};
    }
    return table;
}

std::optional<AntiCrossing> find_anticrossing(const SpectrumTable& table, int manifold, double lo,
                                              double hi) {
    const auto& grid = table.delta_q_grid;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid[i] >= lo && grid[i] <= hi) idx.push_back(i);
    if (idx.size() < 3) return std::nullopt;

    // Per adjacent pair, the grid minimum of its gap; keep the smallest one
    // that lies strictly inside the window. Pairs that are merely close
    // everywhere (minimum on an edge) are not anti-crossings.
    std::vector<std::vector<double>> levels;
    double scale = 0;
    for (std::size_t i : idx) {
        levels.push_back(table.manifold_levels(i, manifold));
        for (double e : levels.back()) scale = std::max(scale, std::abs(e));
    }
    const std::size_t pairs = levels.front().empty() ? 0 : levels.front().size() - 1;
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_pos = 0;
    int best_pair = -1;
    for (std::size_t k = 0; k < pairs; ++k) {
        double m = std::numeric_limits<double>::infinity();
        std::size_t at = 0;
        for (std::size_t pos = 0; pos < idx.size(); ++pos) {
            const double gap = levels[pos][k + 1] - levels[pos][k];
            if (gap < m) {
                m = gap;
                at = pos;
            }
        }
        if (at == 0 || at + 1 == idx.size()) continue;
        if (m < best) {
            best = m;
            best_pos = at;
            best_pair = static_cast<int>(k);
        }
    }
    if (best_pair < 0) return std::nullopt;

    auto gap_at = [&](std::size_t i) {
        const auto levels = table.manifold_levels(i, manifold);
        return levels[best_pair + 1] - levels[best_pair];
    };
    const double x0 = grid[idx[best_pos - 1]], x1 = grid[idx[best_pos]], x2 = grid[idx[best_pos + 1]];
    const double g0 = gap_at(idx[best_pos - 1]), g1 = gap_at(idx[best_pos]), g2 = gap_at(idx[best_pos + 1]);
    const double y0 = g0 * g0, y1 = g1 * g1, y2 = g2 * g2;

    // Parabola through (x_k, gap_k^2); near an avoided crossing
    // gap^2 = a (x - x*)^2 + g^2 holds exactly for a two-level model.
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double a = (d12 - d01) / (x2 - x0);
    AntiCrossing ac;
    ac.lower_branch = best_pair;
    ac.upper_branch = best_pair + 1;
    double g_sq = y1;
    ac.location = x1;
    if (a > 0) {
        // Newton form y0 + d01 (x - x0) + a (x - x0)(x - x1); vertex where its slope vanishes.
        const double xv = std::clamp(0.5 * (x0 + x1) - d01 / (2 * a), x0, x2);
        g_sq = y0 + d01 * (xv - x0) + a * (xv - x0) * (xv - x1);
        ac.location = xv;
    }
    // Eigenvalue round-off enters gap^2 at the level eps * |E| * gap.
    const double noise = 64 * std::numeric_limits<double>::epsilon() * std::max(1.0, scale) *
                         std::max({g0, g1, g2});
    if (g_sq <= noise) {
        ac.gap = 0.0;
        ac.true_crossing = true;
    } else {
        ac.gap = std::sqrt(g_sq);
    }
    return ac;
}

}  // namespace qswitch
