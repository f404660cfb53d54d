#pragma once

#include <vector>

#include "polyfactor.hpp"
#include "polynomial.hpp"

namespace p2stab {

namespace detail {

// Distinct sample nodes 0, 1, -1, 2, -2, ...
inline Rational sample_node(std::size_t k) {
    if (k == 0) return 0;
    const long long half = static_cast<long long>((k + 1) / 2);
    return (k % 2 == 1) ? Rational(half) : Rational(-half);
}

} // namespace detail

// Sylvester resultant of f and g with respect to one variable, eliminating it.
// Both inputs must have positive degree in that variable.  The result is a
// homogeneous form of degree  l*deg(f) + m*deg(g) - m*l  in the two remaining
// variables (m, l the degrees of f, g in the eliminated variable); it is the
// zero form exactly when f and g share a factor of positive degree in the
// eliminated variable.  Computed by evaluation and interpolation: every sample
// is an exact rational Sylvester determinant, and the determinant of the
// generic Sylvester matrix is homogeneous of exactly the predicted degree.
inline HomogeneousPolynomial resultant_eliminate(const HomogeneousPolynomial& f,
                                                 const HomogeneousPolynomial& g, int var) {
    if (var < 0 || var > 2) throw input_error("resultant: variable index out of range");
    const int m = f.degree_in(var);
    const int l = g.degree_in(var);
    if (m < 1 || l < 1)
        throw input_error("resultant: both inputs need positive degree in the eliminated variable");
    const int o1 = var == 0 ? 1 : 0;
    const int o2 = var == 2 ? 1 : 2;

    const auto fc = detail::coeffs_along(f, var);
    const auto gc = detail::coeffs_along(g, var);
    const int target_degree = l * f.degree() + m * g.degree() - m * l;
    const std::size_t size = static_cast<std::size_t>(m + l);

    std::vector<std::pair<Rational, Rational>> samples;
    samples.reserve(static_cast<std::size_t>(target_degree) + 1);
    for (std::size_t k = 0; k <= static_cast<std::size_t>(target_degree); ++k) {
        const Rational t = detail::sample_node(k);
        std::array<Rational, 3> at{Rational(0), Rational(0), Rational(0)};
        at.at(o1) = t;
        at.at(o2) = 1;
        std::vector<Rational> fv(static_cast<std::size_t>(m) + 1), gv(static_cast<std::size_t>(l) + 1);
        for (int i = 0; i <= m; ++i) fv[static_cast<std::size_t>(i)] = fc[static_cast<std::size_t>(i)].evaluate(at);
        for (int i = 0; i <= l; ++i) gv[static_cast<std::size_t>(i)] = gc[static_cast<std::size_t>(i)].evaluate(at);

        RationalMatrix syl(size, size);
        for (int row = 0; row < l; ++row)
            for (int i = 0; i <= m; ++i) syl(static_cast<std::size_t>(row), static_cast<std::size_t>(row + i)) = fv[static_cast<std::size_t>(m - i)];
        for (int row = 0; row < m; ++row)
            for (int i = 0; i <= l; ++i) syl(static_cast<std::size_t>(l + row), static_cast<std::size_t>(row + i)) = gv[static_cast<std::size_t>(l - i)];
        samples.emplace_back(t, syl.det());
    }

    const UniPoly p = lagrange_interpolate(samples);
    if (uni_degree(p) > target_degree) throw internal_error("resultant: interpolation overflow");
    HomogeneousPolynomial out(target_degree);
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] == 0) continue;
        Exponents e{0, 0, 0};
        e.at(o1) = static_cast<int>(k);
        e.at(o2) = target_degree - static_cast<int>(k);
        out.add_term(e, p[k]);
    }
    return out;
}

namespace detail {

// Fraction-free expansion: dynamic programming over column subsets, entirely in
// the polynomial ring (no divisions).
inline HomogeneousPolynomial det_linear_expansion(
    const std::vector<std::vector<HomogeneousPolynomial>>& m) {
    const std::size_t n = m.size();
    std::vector<HomogeneousPolynomial> minors(std::size_t(1) << n, HomogeneousPolynomial(0));
    minors[0] = HomogeneousPolynomial::constant(1);
    for (std::size_t row = 0; row < n; ++row) {
        std::vector<HomogeneousPolynomial> next(std::size_t(1) << n,
                                                HomogeneousPolynomial(static_cast<int>(row) + 1));
        for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcountll(mask)) != row + 1) continue;
            HomogeneousPolynomial acc(static_cast<int>(row) + 1);
            int parity = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (!(mask >> j & 1)) continue;
                const HomogeneousPolynomial& e = m[row][j];
                const HomogeneousPolynomial& sub = minors[mask ^ (std::size_t(1) << j)];
                if (!e.is_zero() && !sub.is_zero()) {
                    HomogeneousPolynomial t = e * sub;
                    // Expansion along the last row of the submatrix: the sign is
                    // (-1)^(row + position of j among the chosen columns).
                    acc = ((row + static_cast<std::size_t>(parity)) % 2 == 0) ? acc + t : acc - t;
                }
                ++parity;
            }
            next[mask] = std::move(acc);
        }
        minors = std::move(next);
    }
    return minors[(std::size_t(1) << n) - 1];
}

// Evaluation-interpolation determinant for larger sizes: sample the matrix on a
// rational grid at Z = 1, take exact determinants, interpolate the bivariate
// dehomogenization, then rehomogenize to degree n.
inline HomogeneousPolynomial det_linear_interpolation(
    const std::vector<std::vector<HomogeneousPolynomial>>& m) {
    const std::size_t n = m.size();
    const std::size_t nodes = n + 1;
    std::vector<std::vector<Rational>> value(nodes, std::vector<Rational>(nodes));
    for (std::size_t a = 0; a < nodes; ++a)
        for (std::size_t b = 0; b < nodes; ++b) {
            const std::array<Rational, 3> at{sample_node(a), sample_node(b), Rational(1)};
            RationalMatrix num(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) num(i, j) = m[i][j].evaluate(at);
            value[a][b] = num.det();
        }
    // Interpolate along the second variable for every first-variable node.
    std::vector<UniPoly> rows(nodes);
    for (std::size_t a = 0; a < nodes; ++a) {
        std::vector<std::pair<Rational, Rational>> s;
        for (std::size_t b = 0; b < nodes; ++b) s.emplace_back(sample_node(b), value[a][b]);
        rows[a] = lagrange_interpolate(s);
    }
    HomogeneousPolynomial out(static_cast<int>(n));
    for (std::size_t yb = 0; yb < nodes; ++yb) {
        std::vector<std::pair<Rational, Rational>> s;
        for (std::size_t a = 0; a < nodes; ++a)
            s.emplace_back(sample_node(a),
                           yb < rows[a].size() ? rows[a][yb] : Rational(0));
        const UniPoly col = lagrange_interpolate(s);
        for (std::size_t xa = 0; xa < col.size(); ++xa) {
            if (col[xa] == 0) continue;
            const int a = static_cast<int>(xa), b = static_cast<int>(yb);
            if (a + b > static_cast<int>(n))
                throw internal_error("det_linear_matrix: interpolation degree overflow");
            out.add_term({a, b, static_cast<int>(n) - a - b}, col[xa]);
        }
    }
    return out;
}

} // namespace detail

// Determinant of a square matrix whose entries are linear forms (or zero),
// homogeneous of degree = size, or the zero form.
inline HomogeneousPolynomial det_linear_matrix(
    const std::vector<std::vector<HomogeneousPolynomial>>& m) {
    const std::size_t n = m.size();
    if (n == 0) throw input_error("det_linear_matrix: empty matrix");
    for (const auto& row : m) {
        if (row.size() != n) throw input_error("det_linear_matrix: matrix is not square");
        for (const auto& e : row)
            if (!e.is_zero() && e.degree() != 1)
                throw input_error("det_linear_matrix: entries must be linear forms or zero");
    }
    if (n <= 14) return detail::det_linear_expansion(m);
    return detail::det_linear_interpolation(m);
}

} // namespace p2stab
