#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qswitch/model.hpp"

using namespace qswitch;

namespace {

const std::vector<BareLabel> kOrder = {
    {true, 0, false, 0, 0}, {false, 1, false, 0, 0}, {false, 0, true, 0, 0}, {false, 0, false, 1, 0}, {false, 0, false, 0, 1}};

// H restricted to the one-quantum manifold in the order e_c0, g1_c, e_q, 1_q, 1_W.
Matrix reordered(const ComplexOperator& h) {
    Matrix out(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            out(i, j) = h.matrix()(Eigen::Index(h.basis().index_of(kOrder[i])),
                                   Eigen::Index(h.basis().index_of(kOrder[j])));
    return out;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("one-quantum Hamiltonian matches the hand-built matrix") {
    const SystemParams p{2.0, 2.5, 0.1, 0.13, 0.07, 0.3};
    const Detunings det{0.2, -0.4};
    const double ec = 2.2, eq = 2.1;
    Matrix expect(5, 5);
    expect << ec, 0.1, 0, 0, 0,
              0.1, 2.0, 0, 0.07, 0,
              0, 0, eq, 0.13, 0,
              0, 0.07, 0.13, 2.5, 0,
              0, 0, 0, 0, 0;
    const auto h = build_hamiltonian(p, det, build_basis(1, 1));
    CHECK(max_abs(reordered(h) - expect) < 1e-15);
    // same block inside the full space
    CHECK(max_abs(reordered(build_hamiltonian(p, det, build_basis(2))) - expect) < 1e-15);
}

TEST_CASE("Hamiltonian is exactly Hermitian") {
    const SystemParams p{2.0, 2.5, 0.1, 0.1, 0.1, 0.1};
    const auto h = build_hamiltonian(p, {0.3, -0.7}, build_basis(2));
    CHECK((h.matrix() - h.matrix().adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fig2 cavity block: omega_c +- Omega_c on resonance") {
    const SystemParams p{2.0, 2.5, 0.1, 0.1, 0.0, 0.1};
    const Matrix h = reordered(build_hamiltonian(p, {0.0, 0.0}, build_basis(1, 1)));
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.topLeftCorner(2, 2));
    CHECK(es.eigenvalues()(0) == doctest::Approx(1.9).epsilon(1e-14));
    CHECK(es.eigenvalues()(1) == doctest::Approx(2.1).epsilon(1e-14));
}

TEST_CASE("zero couplings give the diagonal of bare energies") {
    const SystemParams p{1.5, 3.0, 0, 0, 0, 0};
    const Detunings det{0.25, -0.5};
    const auto b = build_basis(2);
    const Matrix h = build_hamiltonian(p, det, b).matrix();
    CHECK(max_abs(h - Matrix(h.diagonal().asDiagonal())) == 0.0);
    for (std::size_t i = 0; i < b->size(); ++i) {
        const auto& l = b->label(i);
        const double e = (l.atom_c ? 1.75 : 0.0) + 1.5 * l.n_c + (l.atom_q ? 2.5 : 0.0) + 3.0 * l.n_q;
        CHECK(h(Eigen::Index(i), Eigen::Index(i)).real() == doctest::Approx(e));
    }
}

TEST_CASE("Hamiltonian parts recombine to the full Hamiltonian") {
    const SystemParams p{2.0, 2.5, 0.1, 0.2, 0.05, 0.1};
    const auto b = build_basis(2);
    const auto parts = build_hamiltonian_parts(p, 0.1, b);
    const Matrix h = build_hamiltonian(p, {0.1, -0.3}, b).matrix();
    CHECK(max_abs(parts.fixed.matrix() + (2.5 - 0.3) * parts.gate_excited.matrix() - h) < 1e-15);
}

TEST_CASE("collapse operator") {
    const SystemParams p{1, 5, 1, 1, 0.01, 0.1};
    const auto b = build_basis(1, 1);
    const auto c = build_collapse_operator(p, b);
    const auto w = Eigen::Index(b->index_of({false, 0, false, 0, 1}));
    const auto q = Eigen::Index(b->index_of({false, 0, false, 1, 0}));
    CHECK(std::abs(c.matrix()(w, q) - std::sqrt(0.1)) < 1e-16);
    CHECK(c.matrix().cwiseAbs().sum() == doctest::Approx(std::sqrt(0.1)));

    // Any state with n_q = 0 is annihilated.
    const auto full = build_basis(2);
    const Matrix cf = build_collapse_operator(p, full).matrix();
    for (std::size_t i = 0; i < full->size(); ++i)
        if (full->label(i).n_q == 0) CHECK(cf.col(Eigen::Index(i)).cwiseAbs().maxCoeff() == 0.0);
    const Matrix n = total_quanta_operator(full).matrix();
    CHECK(max_abs(cf * n - n * cf) == 0.0);
}

TEST_CASE("Hamiltonian commutes with total quanta for random parameters") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    const auto b = build_basis(2);
    const Matrix n = total_quanta_operator(b).matrix();
    for (int k = 0; k < 20; ++k) {
        const SystemParams p{u(rng), u(rng) + 3.0, u(rng), u(rng), u(rng), u(rng)};
        const Matrix h = build_hamiltonian(p, {u(rng) - 1.5, u(rng) - 1.5}, b).matrix();
        CHECK(max_abs(h * n - n * h) < 1e-12);
    }
}

TEST_CASE("parameter validation") {
    const SystemParams fig5{1, 5, 1, 1, 0.01, 0.1};
    auto d = validate_params(fig5);
    CHECK(d.ok());
    CHECK(d.warnings.size() == 1);

    const SystemParams table1{2.95e15, 2.95e15 + 1e12, 1e10, 1e10, 1e10, 1e11};
    d = validate_params(table1);
    CHECK(d.ok());
    CHECK(d.warnings.empty());

    d = validate_params({1, 5, 1, 1, -1, 0.1});
    CHECK_FALSE(d.ok());
    d = validate_params({5, 1, 1, 1, 0.01, 0.1});
    CHECK_FALSE(d.ok());
    d = validate_params({1, 5, 1, std::nan(""), 0.01, 0.1});
    CHECK_FALSE(d.ok());
}
