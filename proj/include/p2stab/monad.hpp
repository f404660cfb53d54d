#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "polynomial.hpp"
#include "resultant.hpp"
#include "sheaves.hpp"
#include "subspace.hpp"

namespace p2stab {

// Monad description of a sheaf on the plane with c1 = 0, c2 = n and rank r:
// an n-dimensional subspace K of H (x) V (dim H = n, dim V = 3) together with,
// when r < n, an (n-r)-dimensional subspace L* of H* (x) V.
//
// K is stored through three n x n matrices: (A_m)(i, s) is the coefficient of
// h_i (x) e_m in the s-th spanning vector of K.  L* is stored through three
// (n-r) x n matrices whose rows span it: (B_m)(t, i) is the coefficient of
// h*_i (x) e_m in the t-th row.  Vectors of H (x) V and H* (x) V are
// flattened to Q^(3n) with the component of index m*n + i carrying the
// (h_i, e_m) coordinate.
struct Monad {
    int n;
    int r;
    std::array<RationalMatrix, 3> A;
    std::optional<std::array<RationalMatrix, 3>> B;

    Monad(int n_, int r_, std::array<RationalMatrix, 3> a,
          std::optional<std::array<RationalMatrix, 3>> b = std::nullopt)
        : n(n_), r(r_), A(std::move(a)), B(std::move(b)) {
        if (n < 1) throw input_error("monad: n must be at least 1");
        if (r < 1 || r > n) throw input_error("monad: rank must satisfy 1 <= r <= n");
        for (const RationalMatrix& m : A)
            if (m.rows() != static_cast<std::size_t>(n) || m.cols() != static_cast<std::size_t>(n))
                throw input_error("monad: the A matrices must be n x n");
        if (r == n) {
            if (B.has_value()) throw input_error("monad: B must be omitted when r = n");
        } else {
            if (!B.has_value()) throw input_error("monad: B is required when r < n");
            for (const RationalMatrix& m : *B)
                if (m.rows() != static_cast<std::size_t>(n - r) ||
                    m.cols() != static_cast<std::size_t>(n))
                    throw input_error("monad: the B matrices must be (n-r) x n");
        }

        if (stacked_columns().rank() != static_cast<std::size_t>(n))
            throw input_error("monad: the spanning vectors of K are dependent");
        if (B.has_value()) {
            RationalMatrix wide =
                RationalMatrix::hcat(RationalMatrix::hcat((*B)[0], (*B)[1]), (*B)[2]);
            if (wide.rank() != static_cast<std::size_t>(n - r))
                throw input_error("monad: the rows of B are dependent");
            const auto& b = *B;
            for (int m1 = 0; m1 < 3; ++m1)
                for (int m2 = m1 + 1; m2 < 3; ++m2) {
                    const RationalMatrix comm = b.at(static_cast<std::size_t>(m1)) * A.at(static_cast<std::size_t>(m2)) -
                                                b.at(static_cast<std::size_t>(m2)) * A.at(static_cast<std::size_t>(m1));
                    if (!comm.is_zero())
                        throw input_error("monad: the composition condition B_i A_j = B_j A_i fails");
                }
        }
    }

    // 3n x n matrix whose columns are the spanning vectors of K.
    RationalMatrix stacked_columns() const {
        return RationalMatrix::vcat(RationalMatrix::vcat(A[0], A[1]), A[2]);
    }
};

inline ChernData chern_data(const Monad& m) { return {m.r, 0, m.n}; }

// K as a subspace of Q^(3n).
inline Subspace monad_kernel_space(const Monad& m) {
    return Subspace::from_columns(m.stacked_columns());
}

// L* as a subspace of Q^(3n); requires r < n.
inline Subspace monad_lstar_space(const Monad& m) {
    if (!m.B.has_value())
        throw input_error("monad: L* requires the B side (r < n)");
    const std::size_t rows = static_cast<std::size_t>(m.n - m.r);
    const std::size_t n = static_cast<std::size_t>(m.n);
    RationalMatrix cols(3 * n, rows);
    for (std::size_t t = 0; t < rows; ++t)
        for (std::size_t mm = 0; mm < 3; ++mm)
            for (std::size_t i = 0; i < n; ++i)
                cols(mm * n + i, t) = (*m.B).at(mm)(t, i);
    return Subspace::from_columns(cols);
}

// The pencil matrix of the monad on a covector l: phi_l = l1 A1 + l2 A2 + l3 A3.
inline RationalMatrix phi(const Monad& m, const std::array<Rational, 3>& l) {
    if (l[0] == 0 && l[1] == 0 && l[2] == 0)
        throw input_error("monad: the covector must be nonzero");
    RationalMatrix out(static_cast<std::size_t>(m.n), static_cast<std::size_t>(m.n));
    for (std::size_t mm = 0; mm < 3; ++mm)
        if (l.at(mm) != 0) out = out + m.A.at(mm).scaled(l.at(mm));
    return out;
}

// Number of sections the sheaf gains on the line annihilated by l.
inline int splitting_count_on_line(const Monad& m, const std::array<Rational, 3>& l) {
    return m.n - static_cast<int>(phi(m, l).rank());
}

// Determinant of the pencil as a form on the dual plane.  Nonzero of degree n
// for generic monads; identically zero signals a degenerate pencil, reported
// through the flag instead of a zero-degree lie.
struct JumpDivisor {
    HomogeneousPolynomial form; // degree n; the zero form when degenerate
    bool degenerate;
};

inline JumpDivisor jump_divisor(const Monad& m) {
    const std::size_t n = static_cast<std::size_t>(m.n);
    std::vector<std::vector<HomogeneousPolynomial>> entries(
        n, std::vector<HomogeneousPolynomial>(n, HomogeneousPolynomial(1)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            HomogeneousPolynomial e(1);
            for (int mm = 0; mm < 3; ++mm) {
                Exponents ex{0, 0, 0};
                ex.at(mm) = 1;
                e.add_term(ex, m.A.at(static_cast<std::size_t>(mm))(i, j));
            }
            entries[i][j] = std::move(e);
        }
    HomogeneousPolynomial det = det_linear_matrix(entries);
    return {det, det.is_zero()};
}

// H (x) V' (or H* (x) V') as a subspace of Q^(3n), for V' a subspace of Q^3.
inline Subspace tensor_with_h(const Subspace& vprime, int n) {
    if (vprime.ambient() != 3) throw input_error("monad: V' must live in Q^3");
    const std::size_t nn = static_cast<std::size_t>(n);
    RationalMatrix cols(3 * nn, vprime.dim() * nn);
    for (std::size_t k = 0; k < vprime.dim(); ++k)
        for (std::size_t i = 0; i < nn; ++i)
            for (std::size_t mm = 0; mm < 3; ++mm)
                cols(mm * nn + i, k * nn + i) = vprime.basis()(mm, k);
    return Subspace::from_columns(cols);
}

// dim(K n H (x) V').
inline std::size_t k_prime_dimension(const Monad& m, const Subspace& vprime) {
    return subspace_intersect(monad_kernel_space(m), tensor_with_h(vprime, m.n)).dim();
}

// dim(L* n H* (x) <v>); requires r < n.
inline std::size_t lstar_intersection_dimension(const Monad& m, const std::array<Rational, 3>& v) {
    const Subspace vspan = Subspace::from_vectors(3, {{v[0], v[1], v[2]}});
    if (vspan.dim() != 1) throw input_error("monad: v must be nonzero");
    return subspace_intersect(monad_lstar_space(m), tensor_with_h(vspan, m.n)).dim();
}

// The annihilator plane of a covector, as a subspace of V.
inline Subspace annihilator_plane(const std::array<Rational, 3>& l) {
    if (l[0] == 0 && l[1] == 0 && l[2] == 0)
        throw input_error("monad: the covector must be nonzero");
    RationalMatrix row(1, 3);
    for (std::size_t k = 0; k < 3; ++k) row(0, k) = l[k];
    return Subspace::from_columns(row.kernel_basis());
}

// K n H (x) <v> vanishes exactly when the stacked evaluation against a basis
// of the annihilator of v is injective.
inline bool alpha_injective(const Monad& m, const std::array<Rational, 3>& v) {
    if (v[0] == 0 && v[1] == 0 && v[2] == 0)
        throw input_error("monad: v must be nonzero");
    RationalMatrix row(1, 3);
    for (std::size_t k = 0; k < 3; ++k) row(0, k) = v[k];
    const RationalMatrix perp = row.kernel_basis(); // 3 x 2, columns span v-perp
    const RationalMatrix top = phi(m, {perp(0, 0), perp(1, 0), perp(2, 0)});
    const RationalMatrix bot = phi(m, {perp(0, 1), perp(1, 1), perp(2, 1)});
    return RationalMatrix::vcat(top, bot).rank() == static_cast<std::size_t>(m.n);
}

// ---------------------------------------------------------------------------
// Instability from a subspace of V.
// ---------------------------------------------------------------------------

struct SubspaceInstabilityResult {
    enum class Verdict { unstable, inconclusive };
    Verdict verdict;
    std::size_t dim_vprime;
    std::size_t dim_kprime;
    // Set when a one-dimensional V' meets K nontrivially, which the structure
    // theory of these monads rules out for genuine sheaf data.
    bool lemma_violation = false;
    std::vector<std::string> chain;
};

// Tests the numerical criterion 3 dim K' > n dim V' for a proper nonzero
// subspace V' of V.  Two-dimensional V' decide instability; one-dimensional
// V' never can, and a nonzero intersection there is flagged instead.
inline SubspaceInstabilityResult check_subspace_instability(const Monad& m,
                                                            const Subspace& vprime) {
    if (vprime.ambient() != 3) throw input_error("monad: V' must live in Q^3");
    if (vprime.dim() == 0 || vprime.dim() == 3)
        throw input_error("monad: V' must be a proper nonzero subspace");
    SubspaceInstabilityResult res{SubspaceInstabilityResult::Verdict::inconclusive,
                                  vprime.dim(), 0, false, {}};
    res.dim_kprime = k_prime_dimension(m, vprime);
    res.chain.push_back("dim V' = " + std::to_string(res.dim_vprime));
    res.chain.push_back("dim K' = dim(K n H(x)V') = " + std::to_string(res.dim_kprime));
    const std::size_t lhs = 3 * res.dim_kprime;
    const std::size_t rhs = res.dim_vprime * static_cast<std::size_t>(m.n);
    res.chain.push_back("compare 3 dim K' = " + std::to_string(lhs) + " with n dim V' = " +
                        std::to_string(rhs));
    if (vprime.dim() == 1) {
        if (res.dim_kprime > 0) {
            res.lemma_violation = true;
            res.chain.push_back("one-dimensional V' with nonzero K': outside the structure "
                                "theory, no verdict");
        } else {
            res.chain.push_back("one-dimensional V' never decides; no verdict");
        }
        return res;
    }
    if (lhs > rhs) {
        res.verdict = SubspaceInstabilityResult::Verdict::unstable;
        res.chain.push_back("strict excess: unstable");
    } else {
        res.chain.push_back("no strict excess: this V' certifies nothing");
    }
    return res;
}

// The line test in the large-polarization regime: V' is the annihilator plane
// of l, and dim K' equals the kernel dimension of the pencil on l.
inline SubspaceInstabilityResult large_m_verdict(const Monad& m, const std::array<Rational, 3>& l) {
    return check_subspace_instability(m, annihilator_plane(l));
}

// ---------------------------------------------------------------------------
// Hilbert-Mumford weight of a pair against a one-parameter subgroup.
// ---------------------------------------------------------------------------

// One-parameter subgroup of SL(H) x SL(V): integer weights on the columns of
// the two frames, each set summing to zero.
struct PairOnePS {
    RationalMatrix h_frame;
    std::vector<long long> h_weights;
    RationalMatrix v_frame;
    std::array<long long, 3> v_weights;

    PairOnePS(RationalMatrix hf, std::vector<long long> hw, RationalMatrix vf,
              std::array<long long, 3> vw)
        : h_frame(std::move(hf)), h_weights(std::move(hw)), v_frame(std::move(vf)), v_weights(vw) {
        if (h_frame.rows() != h_frame.cols() || h_frame.det() == 0)
            throw input_error("one-parameter subgroup: H frame must be invertible");
        if (h_weights.size() != h_frame.rows())
            throw input_error("one-parameter subgroup: one H weight per frame column");
        if (v_frame.rows() != 3 || v_frame.cols() != 3 || v_frame.det() == 0)
            throw input_error("one-parameter subgroup: V frame must be an invertible 3x3 matrix");
        long long hs = 0;
        for (long long w : h_weights) hs += w;
        if (hs != 0) throw input_error("one-parameter subgroup: H weights must sum to zero");
        if (v_weights[0] + v_weights[1] + v_weights[2] != 0)
            throw input_error("one-parameter subgroup: V weights must sum to zero");
    }
};

// Linearization weights for the two Grassmannian factors.
struct Polarization {
    long long p;
    long long q;

    Polarization(long long p_, long long q_) : p(p_), q(q_) {
        if (p < 0 || q < 0 || (p == 0 && q == 0))
            throw input_error("polarization: weights must be nonnegative and not both zero");
    }
};

namespace detail {

// Sum over an adapted basis of `space` of the weights of the flag built from
// `vectors` (columns) sorted by weight, descending: the standard Grassmannian
// weight sum  sum_levels u * (dim(space n F_u) - dim(space n F_prev)).
inline long long flag_weight_sum(const Subspace& space, const RationalMatrix& vectors,
                                 const std::vector<long long>& weights) {
    if (space.dim() == 0) return 0;
    std::vector<std::size_t> order(weights.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });

    long long total = 0;
    std::size_t prev_dim = 0;
    RationalMatrix prefix(vectors.rows(), 0);
    for (std::size_t k = 0; k < order.size();) {
        const long long level = weights[order[k]];
        while (k < order.size() && weights[order[k]] == level) {
            prefix = RationalMatrix::hcat(
                prefix, RationalMatrix(vectors.rows(), 1, vectors.column(order[k])));
            ++k;
        }
        const std::size_t cut =
            subspace_intersect(space, Subspace::from_columns(prefix)).dim();
        total += level * static_cast<long long>(cut - prev_dim);
        prev_dim = cut;
        if (prev_dim == space.dim()) break;
    }
    return total;
}

} // namespace detail

// Hilbert-Mumford weight of the monad pair (K, L*) against the subgroup,
// weighted by the polarization.  Negative values certify instability of the
// pair for that linearization.
inline long long mu_pair(const Monad& m, const PairOnePS& lambda, const Polarization& pol) {
    const std::size_t n = static_cast<std::size_t>(m.n);
    if (lambda.h_frame.rows() != n)
        throw input_error("one-parameter subgroup: H frame size must match the monad");

    // Basis h'_i (x) e'_j of H (x) V with weight p_i + q_j.
    RationalMatrix kvecs(3 * n, 3 * n);
    std::vector<long long> kweights(3 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const std::size_t col = i * 3 + j;
            for (std::size_t mm = 0; mm < 3; ++mm)
                for (std::size_t t = 0; t < n; ++t)
                    kvecs(mm * n + t, col) = lambda.v_frame(mm, j) * lambda.h_frame(t, i);
            kweights[col] = lambda.h_weights[i] + lambda.v_weights.at(j);
        }
    long long total = pol.p * detail::flag_weight_sum(monad_kernel_space(m), kvecs, kweights);

    if (pol.q != 0 && m.B.has_value()) {
        // Basis h'*_i (x) e'_j of H* (x) V with weight -p_i + q_j; the dual
        // basis vectors are the columns of the inverse transpose.
        const RationalMatrix dual = lambda.h_frame.inverse().transpose();
        RationalMatrix wvecs(3 * n, 3 * n);
        std::vector<long long> wweights(3 * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                const std::size_t col = i * 3 + j;
                for (std::size_t mm = 0; mm < 3; ++mm)
                    for (std::size_t t = 0; t < n; ++t)
                        wvecs(mm * n + t, col) = lambda.v_frame(mm, j) * dual(t, i);
                wweights[col] = -lambda.h_weights[i] + lambda.v_weights.at(j);
            }
        total += pol.q * detail::flag_weight_sum(monad_lstar_space(m), wvecs, wweights);
    }
    return -total;
}

// The adapted subgroup for a two-dimensional V': weights (1, 1, -2) on a frame
// whose first two columns span V', trivial on H.  Against polarization (1, 0)
// its weight is exactly 2n - 3 dim K', tying the numerical criterion to the
// Hilbert-Mumford pairing.
inline PairOnePS adapted_subgroup(const Monad& m, const Subspace& vprime) {
    if (vprime.ambient() != 3 || vprime.dim() != 2)
        throw input_error("monad: adapted subgroup needs a two-dimensional V'");
    RationalMatrix frame(3, 3);
    frame.set_column(0, vprime.basis().column(0));
    frame.set_column(1, vprime.basis().column(1));
    // Complete with a unit vector outside V'.
    for (std::size_t k = 0; k < 3; ++k) {
        RationalMatrix cand = frame;
        std::vector<Rational> unit(3, Rational(0));
        unit[k] = 1;
        cand.set_column(2, unit);
        if (cand.det() != 0) {
            frame = cand;
            break;
        }
    }
    if (frame.det() == 0) throw internal_error("adapted subgroup: frame completion failed");
    return PairOnePS(RationalMatrix::identity(static_cast<std::size_t>(m.n)),
                     std::vector<long long>(static_cast<std::size_t>(m.n), 0), frame,
                     {1, 1, -2});
}

} // namespace p2stab
