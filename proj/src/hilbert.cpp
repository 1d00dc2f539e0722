#include "qswitch/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qswitch {

Subsystem parse_subsystem(std::string_view tag) {
    if (tag == "photon_c") return Subsystem::photon_c;
    if (tag == "photon_q") return Subsystem::photon_q;
    if (tag == "photon_W") return Subsystem::photon_W;
    if (tag == "atom_c") return Subsystem::atom_c;
    if (tag == "atom_q") return Subsystem::atom_q;
    throw std::invalid_argument("unknown subsystem tag '" + std::string(tag) + "'");
}

std::string_view to_string(Subsystem s) {
    switch (s) {
        case Subsystem::photon_c: return "photon_c";
        case Subsystem::photon_q: return "photon_q";
        case Subsystem::photon_W: return "photon_W";
        case Subsystem::atom_c: return "atom_c";
        case Subsystem::atom_q: return "atom_q";
    }
    return "?";
}

std::string BareLabel::name() const {
    std::string s;
    s += atom_c ? 'e' : 'g';
    s += 'c';
    s += std::to_string(n_c);
    s += '_';
    s += atom_q ? 'e' : 'g';
    s += 'q';
    s += std::to_string(n_q);
    s += '_';
    s += std::to_string(n_w);
    s += 'W';
    return s;
}

std::optional<std::size_t> BasisIndex::find(const BareLabel& label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t BasisIndex::index_of(const BareLabel& label) const {
    if (auto i = find(label)) return *i;
    throw std::out_of_range("label " + label.name() + " not in basis");
}

BasisPtr build_basis(int n_max, std::optional<int> quanta_filter) {
    if (n_max < 1) {
        throw std::invalid_argument("invalid truncation: n_max must be >= 1, got " +
                                    std::to_string(n_max));
    }
    if (quanta_filter && (*quanta_filter < 0 || *quanta_filter > 2 + 3 * n_max)) {
        throw std::invalid_argument("quanta filter " + std::to_string(*quanta_filter) +
                                    " outside [0, " + std::to_string(2 + 3 * n_max) + "]");
    }

    std::vector<BareLabel> labels;
    for (int ac = 0; ac <= 1; ++ac)
        for (int nc = 0; nc <= n_max; ++nc)
            for (int aq = 0; aq <= 1; ++aq)
                for (int nq = 0; nq <= n_max; ++nq)
                    for (int nw = 0; nw <= n_max; ++nw) {
                        BareLabel l{ac == 1, nc, aq == 1, nq, nw};
                        if (!quanta_filter || l.total_quanta() == *quanta_filter) labels.push_back(l);
                    }
    // Loop nesting already produces lexicographic order.
    return BasisPtr(new BasisIndex(n_max, quanta_filter, std::move(labels)));
}

ComplexOperator::ComplexOperator(BasisPtr basis, Matrix entries)
    : basis_(std::move(basis)), entries_(std::move(entries)) {
    if (!basis_) throw std::invalid_argument("operator without basis");
    const auto n = static_cast<Eigen::Index>(basis_->size());
    if (entries_.rows() != n || entries_.cols() != n) {
        throw std::invalid_argument("operator dimension " + std::to_string(entries_.rows()) + "x" +
                                    std::to_string(entries_.cols()) + " does not match basis size " +
                                    std::to_string(n));
    }
}

namespace {

// Applies one ladder step to a bare label on the full truncated space.
// Returns false when the result is the zero vector.
bool apply(const Ladder& op, int n_max, BareLabel& l, double& amp) {
    auto photon = [&](int& n) {
        if (op.raise) {
            if (n >= n_max) return false;
            ++n;
            amp *= std::sqrt(double(n));
        } else {
            if (n == 0) return false;
            amp *= std::sqrt(double(n));
            --n;
        }
        return true;
    };
    auto atom = [&](bool& excited) {
        if (excited == op.raise) return false;
        excited = op.raise;
        return true;
    };
    switch (op.subsystem) {
        case Subsystem::photon_c: return photon(l.n_c);
        case Subsystem::photon_q: return photon(l.n_q);
        case Subsystem::photon_W: return photon(l.n_w);
        case Subsystem::atom_c: return atom(l.atom_c);
        case Subsystem::atom_q: return atom(l.atom_q);
    }
    return false;
}

}  // namespace

ComplexOperator ladder_product(const BasisPtr& basis, std::initializer_list<Ladder> ops) {
    const auto n = static_cast<Eigen::Index>(basis->size());
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index col = 0; col < n; ++col) {
        BareLabel l = basis->label(col);
        double amp = 1.0;
        bool alive = true;
        // Rightmost factor acts first.
        for (auto it = std::rbegin(ops); alive && it != std::rend(ops); ++it)
            alive = apply(*it, basis->n_max(), l, amp);
        if (!alive) continue;
        if (auto row = basis->find(l)) m(static_cast<Eigen::Index>(*row), col) = amp;
    }
    return {basis, std::move(m)};
}

ComplexOperator lowering_operator(const BasisPtr& basis, Subsystem subsystem) {
    return ladder_product(basis, {Ladder{subsystem, false}});
}

ComplexOperator raising_operator(const BasisPtr& basis, Subsystem subsystem) {
    return lowering_operator(basis, subsystem).adjoint();
}

ComplexOperator total_quanta_operator(const BasisPtr& basis) {
    const auto n = static_cast<Eigen::Index>(basis->size());
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = double(basis->label(i).total_quanta());
    return {basis, std::move(m)};
}

ComplexOperator excited_projector(const BasisPtr& basis, Subsystem atom) {
    if (atom != Subsystem::atom_c && atom != Subsystem::atom_q)
        throw std::invalid_argument("excited_projector needs an atom subsystem");
    const auto n = static_cast<Eigen::Index>(basis->size());
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& l = basis->label(i);
        if (atom == Subsystem::atom_c ? l.atom_c : l.atom_q) m(i, i) = 1.0;
    }
    return {basis, std::move(m)};
}

}  // namespace qswitch
