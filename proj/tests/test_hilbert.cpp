#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qswitch/hilbert.hpp"

using namespace qswitch;

namespace {

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Matrix element <bra| op |ket> by label.
Complex element(const ComplexOperator& op, const BareLabel& bra, const BareLabel& ket) {
    const auto& b = op.basis();
    return op.matrix()(Eigen::Index(b.index_of(bra)), Eigen::Index(b.index_of(ket)));
}

}  // namespace

TEST_CASE("basis sizes") {
    CHECK(build_basis(1)->size() == 32);
    CHECK(build_basis(2)->size() == 4 * 27);
    CHECK(build_basis(3)->size() == 4 * 64);
    CHECK(build_basis(2, 0)->size() == 1);
    CHECK(build_basis(2, 0)->label(0) == BareLabel{});
}

TEST_CASE("one-quantum manifold is the five single-excitation states in lexicographic order") {
    const auto b = build_basis(1, 1);
    REQUIRE(b->size() == 5);
    // g < e and counts ascending, nested atom_c, n_c, atom_q, n_q, n_W
    CHECK(b->label(0) == BareLabel{false, 0, false, 0, 1});
    CHECK(b->label(1) == BareLabel{false, 0, false, 1, 0});
    CHECK(b->label(2) == BareLabel{false, 0, true, 0, 0});
    CHECK(b->label(3) == BareLabel{false, 1, false, 0, 0});
    CHECK(b->label(4) == BareLabel{true, 0, false, 0, 0});
    for (const auto& l : b->labels()) CHECK(l.total_quanta() == 1);
}

TEST_CASE("basis ordering is strictly increasing and deterministic") {
    const auto a = build_basis(2);
    const auto b = build_basis(2);
    CHECK(a->labels() == b->labels());
    for (std::size_t i = 1; i < a->size(); ++i) CHECK(a->label(i - 1) < a->label(i));
    const auto f = build_basis(2, 2);
    for (const auto& l : f->labels()) CHECK(l.total_quanta() == 2);
}

TEST_CASE("basis errors") {
    CHECK_THROWS_AS(build_basis(0), std::invalid_argument);
    CHECK_THROWS_AS(build_basis(-1), std::invalid_argument);
    CHECK_THROWS_AS(build_basis(1, 6), std::invalid_argument);
    CHECK_THROWS_AS(build_basis(1, -1), std::invalid_argument);
    CHECK_NOTHROW(build_basis(1, 5));
    CHECK_THROWS_AS(build_basis(1, 1)->index_of(BareLabel{}), std::out_of_range);
}

TEST_CASE("label names") {
    CHECK(BareLabel{false, 1, false, 0, 0}.name() == "gc1_gq0_0W");
    CHECK(BareLabel{true, 0, false, 0, 1}.name() == "ec0_gq0_1W");
}

TEST_CASE("subsystem tags") {
    CHECK(parse_subsystem("photon_W") == Subsystem::photon_W);
    CHECK(to_string(Subsystem::atom_q) == "atom_q");
    CHECK_THROWS_AS(parse_subsystem("photon_x"), std::invalid_argument);
}

TEST_CASE("photon ladder matrix elements") {
    const auto b1 = build_basis(1);
    const auto a1 = lowering_operator(b1, Subsystem::photon_c);
    CHECK(std::abs(element(a1, {true, 0, false, 1, 1}, {true, 1, false, 1, 1}) - 1.0) < 1e-15);

    const auto b2 = build_basis(2);
    const auto a2 = lowering_operator(b2, Subsystem::photon_c);
    CHECK(std::abs(element(a2, {false, 1, true, 0, 2}, {false, 2, true, 0, 2}) - std::sqrt(2.0)) < 1e-15);
    // spectators must match
    CHECK(element(a2, {false, 1, true, 0, 1}, {false, 2, true, 0, 2}) == 0.0);

    const auto aw = lowering_operator(b2, Subsystem::photon_W);
    CHECK(std::abs(element(aw, {false, 0, false, 0, 1}, {false, 0, false, 0, 2}) - std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("atomic lowering") {
    const auto b = build_basis(2);
    for (auto s : {Subsystem::atom_c, Subsystem::atom_q}) {
        const Matrix m = lowering_operator(b, s).matrix();
        CHECK(max_abs(m * m) == 0.0);
    }
    const auto sq = lowering_operator(b, Subsystem::atom_q);
    CHECK(element(sq, {false, 1, false, 2, 0}, {false, 1, true, 2, 0}) == 1.0);
    CHECK(max_abs(sq.matrix().col(Eigen::Index(b->index_of({true, 0, false, 0, 0})))) == 0.0);
}

TEST_CASE("raising is exactly the adjoint of lowering") {
    const auto b = build_basis(2);
    for (auto s : {Subsystem::photon_c, Subsystem::photon_q, Subsystem::photon_W, Subsystem::atom_c, Subsystem::atom_q})
        CHECK(max_abs(raising_operator(b, s).matrix() - lowering_operator(b, s).matrix().adjoint()) == 0.0);
}

TEST_CASE("truncated canonical commutator is the identity below the cutoff") {
    const auto b = build_basis(2);
    for (auto s : {Subsystem::photon_c, Subsystem::photon_q, Subsystem::photon_W}) {
        const Matrix a = lowering_operator(b, s).matrix();
        const Matrix comm = a * a.adjoint() - a.adjoint() * a;
        for (std::size_t i = 0; i < b->size(); ++i) {
            const auto& l = b->label(i);
            const int n = s == Subsystem::photon_c ? l.n_c : s == Subsystem::photon_q ? l.n_q : l.n_w;
            if (n >= b->n_max()) continue;
            for (std::size_t j = 0; j < b->size(); ++j)
                CHECK(std::abs(comm(Eigen::Index(i), Eigen::Index(j)) - Complex(i == j ? 1.0 : 0.0)) < 1e-14);
        }
    }
}

TEST_CASE("total quanta operator") {
    const auto f = build_basis(1, 1);
    CHECK(max_abs(total_quanta_operator(f).matrix() - Matrix::Identity(5, 5)) == 0.0);
    const auto b = build_basis(1);
    const auto n = total_quanta_operator(b);
    CHECK(element(n, {true, 1, true, 1, 1}, {true, 1, true, 1, 1}) == 5.0);
    CHECK(max_abs(n.matrix() - Matrix(n.matrix().diagonal().asDiagonal())) == 0.0);
}

TEST_CASE("filtered operators are projections of full-space operators") {
    const auto full = build_basis(2);
    for (int q = 0; q <= 3; ++q) {
        const auto part = build_basis(2, q);
        auto check = [&](const ComplexOperator& small, const ComplexOperator& big) {
            for (std::size_t i = 0; i < part->size(); ++i)
                for (std::size_t j = 0; j < part->size(); ++j)
                    CHECK(small.matrix()(Eigen::Index(i), Eigen::Index(j)) ==
                          big.matrix()(Eigen::Index(full->index_of(part->label(i))),
                                       Eigen::Index(full->index_of(part->label(j)))));
        };
        check(ladder_product(part, {{Subsystem::photon_q, true}, {Subsystem::photon_c, false}}),
              ladder_product(full, {{Subsystem::photon_q, true}, {Subsystem::photon_c, false}}));
        check(ladder_product(part, {{Subsystem::photon_W, true}, {Subsystem::photon_q, false}}),
              ladder_product(full, {{Subsystem::photon_W, true}, {Subsystem::photon_q, false}}));
        check(excited_projector(part, Subsystem::atom_q), excited_projector(full, Subsystem::atom_q));
    }
}

TEST_CASE("ladder products equal matrix products on the full space when nothing truncates") {
    const auto b = build_basis(2);
    const Matrix ad_c = raising_operator(b, Subsystem::photon_c).matrix();
    const Matrix a_c = lowering_operator(b, Subsystem::photon_c).matrix();
    const Matrix sm = lowering_operator(b, Subsystem::atom_c).matrix();
    CHECK(max_abs(ladder_product(b, {{Subsystem::photon_c, true}, {Subsystem::photon_c, false}}).matrix() -
                  ad_c * a_c) < 1e-15);
    CHECK(max_abs(ladder_product(b, {{Subsystem::atom_c, false}, {Subsystem::photon_c, true}}).matrix() -
                  sm * ad_c) < 1e-15);
    CHECK(max_abs(excited_projector(b, Subsystem::atom_c).matrix() - sm.adjoint() * sm) == 0.0);
}

TEST_CASE("operator construction checks dimensions") {
    const auto b = build_basis(1, 1);
    CHECK_THROWS_AS(ComplexOperator(b, Matrix::Zero(4, 4)), std::invalid_argument);
    CHECK_THROWS_AS(ComplexOperator(b, Matrix::Zero(5, 4)), std::invalid_argument);
}
