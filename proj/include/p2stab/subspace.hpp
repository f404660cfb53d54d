#pragma once

#include <vector>

#include "matrix.hpp"

namespace p2stab {

// Linear subspace of Q^ambient, held as a canonical basis: the column span is
// reduced so that equality of subspaces is equality of the stored matrices.
class Subspace {
  public:
    explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(ambient, 0) {}

    // Span of the given columns; dependent columns are dropped.
    static Subspace from_columns(const RationalMatrix& columns) {
        Subspace s(columns.rows());
        auto [red, pivots] = columns.transpose().rref();
        RationalMatrix basis(columns.rows(), pivots.size());
        for (std::size_t k = 0; k < pivots.size(); ++k)
            for (std::size_t i = 0; i < columns.rows(); ++i) basis(i, k) = red(k, i);
        s.basis_ = std::move(basis);
        return s;
    }

    static Subspace from_vectors(std::size_t ambient, const std::vector<std::vector<Rational>>& vecs) {
        RationalMatrix m(ambient, vecs.size());
        for (std::size_t j = 0; j < vecs.size(); ++j) m.set_column(j, vecs[j]);
        return from_columns(m);
    }

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.cols(); }
    const RationalMatrix& basis() const { return basis_; }

    bool contains(const std::vector<Rational>& v) const {
        if (v.size() != ambient_) throw input_error("subspace: vector dimension mismatch");
        if (dim() == 0) {
            for (const auto& x : v)
                if (x != 0) return false;
            return true;
        }
        return basis_.solve(v).has_value();
    }

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }

  private:
    std::size_t ambient_;
    RationalMatrix basis_;
};

// Intersection via the kernel of [A | B]: a kernel vector (x; y) satisfies
// A x = -B y, and x |-> A x maps the kernel bijectively onto the intersection.
inline Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw input_error("subspace: ambient dimension mismatch");
    if (a.dim() == 0 || b.dim() == 0) return Subspace(a.ambient());
    const RationalMatrix joint = RationalMatrix::hcat(a.basis(), b.basis());
    const RationalMatrix ker = joint.kernel_basis();
    RationalMatrix vecs(a.ambient(), ker.cols());
    for (std::size_t k = 0; k < ker.cols(); ++k) {
        std::vector<Rational> x(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) x[i] = ker(i, k);
        vecs.set_column(k, a.basis().apply(x));
    }
    return Subspace::from_columns(vecs);
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw input_error("subspace: ambient dimension mismatch");
    return Subspace::from_columns(RationalMatrix::hcat(a.basis(), b.basis()));
}

} // namespace p2stab
