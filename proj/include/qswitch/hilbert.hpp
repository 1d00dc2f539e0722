#pragma once

// Truncated tensor-product bases for the cavity / gate / waveguide system and
// the ladder operators acting on them.
//
// Tensor factor order is atom_c (x) photon_c (x) atom_q (x) photon_q (x) photon_W.

#include <compare>
#include <complex>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qswitch {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Subsystem { photon_c, photon_q, photon_W, atom_c, atom_q };

/// Accepts "photon_c", "photon_q", "photon_W", "atom_c", "atom_q".
Subsystem parse_subsystem(std::string_view tag);
std::string_view to_string(Subsystem s);

struct BareLabel {
    bool atom_c = false;  // true == excited
    int n_c = 0;
    bool atom_q = false;
    int n_q = 0;
    int n_w = 0;

    int total_quanta() const noexcept {
        return int(atom_c) + n_c + int(atom_q) + n_q + n_w;
    }

    /// Column-safe name, e.g. "gc1_gq0_0W" for |g_c 1_c g_q 0_q 0_W>.
    std::string name() const;

    // Member order gives the lexicographic basis order with g < e.
    auto operator<=>(const BareLabel&) const = default;
};

class BasisIndex;
using BasisPtr = std::shared_ptr<const BasisIndex>;

class BasisIndex {
public:
    int n_max() const noexcept { return n_max_; }
    std::optional<int> quanta_filter() const noexcept { return quanta_filter_; }
    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<BareLabel>& labels() const noexcept { return labels_; }
    const BareLabel& label(std::size_t i) const { return labels_.at(i); }

    std::optional<std::size_t> find(const BareLabel& label) const;
    /// Throws std::out_of_range if the label is not in this basis.
    std::size_t index_of(const BareLabel& label) const;

    bool operator==(const BasisIndex& other) const {
        return n_max_ == other.n_max_ && quanta_filter_ == other.quanta_filter_;
    }

private:
    friend BasisPtr build_basis(int n_max, std::optional<int> quanta_filter);
    BasisIndex(int n_max, std::optional<int> quanta_filter, std::vector<BareLabel> labels)
        : n_max_(n_max), quanta_filter_(quanta_filter), labels_(std::move(labels)) {}

    int n_max_;
    std::optional<int> quanta_filter_;
    std::vector<BareLabel> labels_;
};

/// Enumerates bare states with every photon count in [0, n_max], optionally
/// keeping only those with total_quanta == quanta_filter.
/// Throws std::invalid_argument for n_max < 1 or an unreachable filter.
BasisPtr build_basis(int n_max, std::optional<int> quanta_filter = std::nullopt);

/// Dense operator bound to the basis it acts on.
class ComplexOperator {
public:
    ComplexOperator(BasisPtr basis, Matrix entries);

    const BasisIndex& basis() const noexcept { return *basis_; }
    const BasisPtr& basis_ptr() const noexcept { return basis_; }
    const Matrix& matrix() const noexcept { return entries_; }
    Eigen::Index dim() const noexcept { return entries_.rows(); }

    ComplexOperator adjoint() const { return {basis_, entries_.adjoint()}; }

private:
    BasisPtr basis_;
    Matrix entries_;
};

/// One ladder step in an operator string.
struct Ladder {
    Subsystem subsystem;
    bool raise = false;
};

/// Matrix of the operator product ops[0] * ops[1] * ... built on the full
/// truncated space and projected onto `basis`. Intermediate states may leave
/// a filtered manifold; only the endpoints are restricted.
ComplexOperator ladder_product(const BasisPtr& basis, std::initializer_list<Ladder> ops);

/// a (photons) or sigma^- (atoms).
ComplexOperator lowering_operator(const BasisPtr& basis, Subsystem subsystem);
ComplexOperator raising_operator(const BasisPtr& basis, Subsystem subsystem);

/// Diagonal operator counting excitations in every factor.
ComplexOperator total_quanta_operator(const BasisPtr& basis);

/// |e><e| for the atom in `subsystem` (atom_c or atom_q).
ComplexOperator excited_projector(const BasisPtr& basis, Subsystem atom);

}  // namespace qswitch
