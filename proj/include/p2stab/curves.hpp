#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "polyfactor.hpp"
#include "polynomial.hpp"
#include "resultant.hpp"

namespace p2stab {

// Point of the projective plane.  The stored representative is kept exactly as
// given; projective equality and ordering go through the canonical
// representative (first nonzero coordinate scaled to 1).
struct ProjectivePoint {
    std::array<Rational, 3> coords;

    ProjectivePoint(Rational x, Rational y, Rational z) : coords{std::move(x), std::move(y), std::move(z)} {
        if (coords[0] == 0 && coords[1] == 0 && coords[2] == 0)
            throw input_error("projective point: all coordinates are zero");
    }

    explicit ProjectivePoint(const std::array<Rational, 3>& c)
        : ProjectivePoint(c[0], c[1], c[2]) {}

    int first_nonzero() const {
        for (int k = 0; k < 3; ++k)
            if (coords.at(k) != 0) return k;
        throw internal_error("projective point: zero vector slipped through");
    }

    ProjectivePoint canonical() const {
        const Rational& lead = coords.at(first_nonzero());
        return ProjectivePoint(coords[0] / lead, coords[1] / lead, coords[2] / lead);
    }

    bool operator==(const ProjectivePoint& o) const {
        return canonical().coords == o.canonical().coords;
    }

    std::string to_string() const {
        return "(" + p2stab::to_string(coords[0]) + " : " + p2stab::to_string(coords[1]) +
               " : " + p2stab::to_string(coords[2]) + ")";
    }
};

// Deterministic order on points (lexicographic on canonical coordinates).
inline bool point_less(const ProjectivePoint& a, const ProjectivePoint& b) {
    return a.canonical().coords < b.canonical().coords;
}

// Plane curve of degree >= 1, given by a nonzero form.
struct PlaneCurve {
    HomogeneousPolynomial form;

    explicit PlaneCurve(HomogeneousPolynomial f) : form(std::move(f)) {
        if (form.is_zero()) throw input_error("plane curve: the zero form defines no curve");
        if (form.degree() < 1) throw input_error("plane curve: degree must be at least 1");
    }

    int degree() const { return form.degree(); }
};

// Diagonal one-parameter subgroup diag(t^w0, t^w1, t^w2) of SL(3): integer
// weights summing to zero.
struct DiagonalOnePS {
    std::array<long long, 3> w;

    explicit DiagonalOnePS(std::array<long long, 3> weights) : w(weights) {
        if (w[0] + w[1] + w[2] != 0)
            throw input_error("one-parameter subgroup: weights must sum to zero");
    }

    DiagonalOnePS(long long a, long long b, long long c) : DiagonalOnePS(std::array<long long, 3>{a, b, c}) {}
};

inline long long monomial_weight(const Exponents& e, const DiagonalOnePS& lambda) {
    return e[0] * lambda.w[0] + e[1] * lambda.w[1] + e[2] * lambda.w[2];
}

// Numerical invariant of a nonzero form against a diagonal one-parameter
// subgroup: minus the smallest weight among the monomials present.  A negative
// value for some subgroup certifies instability; nonnegative values for all of
// them is exactly semistability.
inline long long mu_curve(const HomogeneousPolynomial& f, const DiagonalOnePS& lambda) {
    if (f.is_zero()) throw input_error("mu: zero form");
    bool first = true;
    long long low = 0;
    for (const auto& [e, c] : f.terms()) {
        const long long wt = monomial_weight(e, lambda);
        if (first || wt < low) low = wt;
        first = false;
    }
    return -low;
}

inline long long mu_curve(const PlaneCurve& curve, const DiagonalOnePS& lambda) {
    return mu_curve(curve.form, lambda);
}

// Unimodular change of coordinates taking P to (0 : 0 : 1): the returned M has
// det 1 and satisfies M * P = (0, 0, 1) exactly (for the stored representative
// of P).  Its inverse is the matrix to substitute into forms.
inline RationalMatrix move_point_matrix(const ProjectivePoint& p) {
    const int k = p.first_nonzero();
    // Companion indices (i, j) with epsilon(i, j, k) = +1.
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    RationalMatrix a(3, 3);
    a(static_cast<std::size_t>(i), 0) = 1;
    a(static_cast<std::size_t>(j), 1) = Rational(1) / p.coords.at(k);
    for (int r = 0; r < 3; ++r) a(static_cast<std::size_t>(r), 2) = p.coords.at(r);
    return a.inverse();
}

// Multiplicity of the curve at a point: after moving the point to (0 : 0 : 1),
// the smallest combined degree in the first two variables among the monomials
// present.
inline int multiplicity_at(const HomogeneousPolynomial& f, const ProjectivePoint& p) {
    if (f.is_zero()) throw input_error("multiplicity: zero form");
    const RationalMatrix frame = move_point_matrix(p).inverse();
    const HomogeneousPolynomial g = substitute(f, frame);
    int m = f.degree() + 1;
    for (const auto& [e, c] : g.terms()) m = std::min(m, e[0] + e[1]);
    return m;
}

inline int multiplicity_at(const PlaneCurve& curve, const ProjectivePoint& p) {
    return multiplicity_at(curve.form, p);
}

// Witness that a curve is non-semistable: in the coordinates given by `frame`
// (the matrix substituted into the form) the point sits at (0 : 0 : 1) and the
// recorded diagonal subgroup assigns every monomial a positive weight.
struct PointInstabilityCertificate {
    ProjectivePoint point;
    int degree;
    int multiplicity;
    RationalMatrix frame;
    DiagonalOnePS weights;
    long long mu;
};

struct PointInstabilityResult {
    enum class Verdict { unstable, inconclusive };
    Verdict verdict;
    int multiplicity;
    std::optional<PointInstabilityCertificate> certificate;
    std::string note;
};

// Sufficient instability test at a point: multiplicity m > 2n/3 produces a
// destabilizing subgroup with weights (1, 1, -2) in the moved coordinates.
// Equality 3m = 2n is a boundary this test cannot decide.
inline PointInstabilityResult check_point_instability(const PlaneCurve& curve,
                                                      const ProjectivePoint& p) {
    const int n = curve.degree();
    const int m = multiplicity_at(curve, p);
    PointInstabilityResult res{PointInstabilityResult::Verdict::inconclusive, m, std::nullopt, ""};
    if (3 * m > 2 * n) {
        const RationalMatrix frame = move_point_matrix(p).inverse();
        const DiagonalOnePS lambda(1, 1, -2);
        const long long mu = mu_curve(substitute(curve.form, frame), lambda);
        if (mu >= 0)
            throw internal_error("point instability: certificate failed to destabilize");
        res.verdict = PointInstabilityResult::Verdict::unstable;
        res.certificate = PointInstabilityCertificate{p, n, m, frame, lambda, mu};
    } else if (3 * m == 2 * n) {
        res.note = "multiplicity sits exactly at 2/3 of the degree; this test is indifferent";
    } else {
        res.note = "multiplicity does not exceed 2/3 of the degree; no conclusion";
    }
    return res;
}

// Recomputes everything a certificate asserts.
inline bool verify_point_certificate(const PlaneCurve& curve,
                                     const PointInstabilityCertificate& cert) {
    if (cert.degree != curve.degree()) return false;
    if (3 * cert.multiplicity <= 2 * cert.degree) return false;
    if (cert.mu >= 0) return false;
    if (cert.frame.rows() != 3 || cert.frame.cols() != 3 || cert.frame.det() == 0) return false;
    // The frame must put the claimed point at (0 : 0 : 1): the inverse of the
    // move matrix carries it as the third column.
    if (cert.frame(0, 2) == 0 && cert.frame(1, 2) == 0 && cert.frame(2, 2) == 0) return false;
    const ProjectivePoint moved(cert.frame(0, 2), cert.frame(1, 2), cert.frame(2, 2));
    if (!(moved == cert.point)) return false;
    const HomogeneousPolynomial g = substitute(curve.form, cert.frame);
    int m = curve.degree() + 1;
    for (const auto& [e, c] : g.terms()) m = std::min(m, e[0] + e[1]);
    if (m != cert.multiplicity) return false;
    return mu_curve(g, cert.weights) == cert.mu;
}

// ---------------------------------------------------------------------------
// Rational singular points.
// ---------------------------------------------------------------------------

struct SingularLocus {
    std::vector<ProjectivePoint> points;
    // Set when the singular locus is positive-dimensional; `points` is then a
    // list of witnesses rather than a complete enumeration.
    bool non_isolated = false;
};

namespace detail {

// Rational common zeros of two coprime nonconstant forms.  Complete: every
// rational point of the common zero locus appears among the candidates.
inline std::vector<ProjectivePoint> pair_points(const HomogeneousPolynomial& p,
                                                const HomogeneousPolynomial& q) {
    std::vector<ProjectivePoint> out;
    auto push = [&out](Rational x, Rational y, Rational z) {
        out.emplace_back(std::move(x), std::move(y), std::move(z));
    };

    // The point (0 : 0 : 1) never lies over a point of the line at Z = 0 and
    // is invisible to both branches below; test it directly.
    const std::array<Rational, 3> e3{Rational(0), Rational(0), Rational(1)};
    if (p.evaluate(e3) == 0 && q.evaluate(e3) == 0) push(0, 0, 1);

    const bool p_binary = p.degree_in(2) == 0;
    const bool q_binary = q.degree_in(2) == 0;
    if (p_binary || q_binary) {
        const HomogeneousPolynomial& bin = p_binary ? p : q;
        const HomogeneousPolynomial& other = p_binary ? q : p;
        // The zero locus of a form free of the last variable is a union of
        // lines through (0 : 0 : 1); restrict the other form to each rational
        // line and collect its roots there.
        for (const auto& [x0, y0] : binary_projective_roots(bin, 0, 1)) {
            RationalMatrix line(3, 3);
            line(0, 0) = x0;
            line(1, 0) = y0;
            line(2, 1) = 1;
            const HomogeneousPolynomial r = compose_linear(other, line);
            if (r.is_zero())
                throw internal_error("pair_points: coprime forms share a line");
            for (const auto& [s, t] : binary_projective_roots(r, 0, 1)) {
                if (s == 0 && t == 0) continue;
                if (s == 0) continue; // (0 : 0 : 1), already tested
                push(s * x0, s * y0, t);
            }
        }
        return out;
    }

    // Both forms involve the last variable: eliminate it.  The resultant is
    // nonzero because the forms are coprime.
    const HomogeneousPolynomial res = resultant_eliminate(p, q, 2);
    if (res.is_zero()) throw internal_error("pair_points: resultant of coprime forms vanished");
    const auto pc = coeffs_along(p, 2);
    const auto qc = coeffs_along(q, 2);
    for (const auto& [x0, y0] : binary_projective_roots(res, 0, 1)) {
        const std::array<Rational, 3> base{x0, y0, Rational(0)};
        UniPoly pu(pc.size()), qu(qc.size());
        for (std::size_t k = 0; k < pc.size(); ++k) pu[k] = pc[k].evaluate(base);
        for (std::size_t k = 0; k < qc.size(); ++k) qu[k] = qc[k].evaluate(base);
        uni_trim(pu);
        uni_trim(qu);
        if (uni_is_zero(pu) || uni_is_zero(qu)) {
            // One form vanishes on the whole fiber line through (x0 : y0 : 0)
            // and (0 : 0 : 1); take the other's roots on that line.
            const HomogeneousPolynomial& other = uni_is_zero(pu) ? q : p;
            RationalMatrix line(3, 3);
            line(0, 0) = x0;
            line(1, 0) = y0;
            line(2, 1) = 1;
            const HomogeneousPolynomial r = compose_linear(other, line);
            if (r.is_zero())
                throw internal_error("pair_points: coprime forms share a line");
            for (const auto& [s, t] : binary_projective_roots(r, 0, 1)) {
                if (s == 0) continue;
                push(s * x0, s * y0, t);
            }
            continue;
        }
        const UniPoly common = uni_gcd(pu, qu);
        if (uni_degree(common) >= 1)
            for (const Rational& z : rational_roots(common)) push(x0, y0, z);
    }
    return out;
}

inline void dedupe_points(std::vector<ProjectivePoint>& pts) {
    std::vector<ProjectivePoint> canon;
    canon.reserve(pts.size());
    for (const ProjectivePoint& p : pts) canon.push_back(p.canonical());
    std::sort(canon.begin(), canon.end(), point_less);
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
    pts = std::move(canon);
}

} // namespace detail

// All rational singular points of the curve, deterministically ordered.  When
// the singular locus has a positive-dimensional part the `non_isolated` flag
// is set and the returned points are only witnesses (the spanning points of
// the locus when it is a single line).
inline SingularLocus find_rational_singular_points(const PlaneCurve& curve) {
    SingularLocus locus;
    const std::array<HomogeneousPolynomial, 3> grad = partials(curve.form);
    std::vector<HomogeneousPolynomial> nonzero;
    for (const auto& g : grad)
        if (!g.is_zero()) nonzero.push_back(g);
    if (nonzero.empty())
        throw internal_error("singular points: all partials vanish for a nonzero form");

    // Common factor of the gradient: a positive-dimensional singular part.
    HomogeneousPolynomial shared = monic(nonzero.front());
    for (std::size_t k = 1; k < nonzero.size(); ++k) shared = poly_gcd(shared, nonzero[k]);
    std::vector<HomogeneousPolynomial> stripped;
    if (shared.degree() >= 1) {
        locus.non_isolated = true;
        const HomogeneousPolynomial reduced = squarefree_part(shared);
        if (reduced.degree() == 1) {
            // The locus contains the line; report its two spanning points.
            RationalMatrix coeffs(1, 3);
            coeffs(0, 0) = reduced.coeff({1, 0, 0});
            coeffs(0, 1) = reduced.coeff({0, 1, 0});
            coeffs(0, 2) = reduced.coeff({0, 0, 1});
            const RationalMatrix span = coeffs.kernel_basis();
            for (std::size_t k = 0; k < span.cols(); ++k)
                locus.points.emplace_back(span(0, k), span(1, k), span(2, k));
        }
        for (const auto& g : nonzero) stripped.push_back(divide_exact(g, shared));
    } else {
        stripped = nonzero;
    }

    // Isolated part: common zeros of the stripped gradient (coprime overall).
    bool empty_locus = false;
    for (const auto& g : stripped)
        if (g.degree() == 0) empty_locus = true;
    std::vector<ProjectivePoint> candidates;
    if (!empty_locus) {
        if (stripped.size() == 1) {
            throw internal_error("singular points: single stripped partial should be constant");
        } else if (stripped.size() == 2) {
            candidates = detail::pair_points(stripped[0], stripped[1]);
        } else {
            const HomogeneousPolynomial h = poly_gcd(stripped[0], stripped[1]);
            if (h.degree() >= 1) {
                candidates = detail::pair_points(h, stripped[2]);
                const auto rest = detail::pair_points(divide_exact(stripped[0], h),
                                                      divide_exact(stripped[1], h));
                candidates.insert(candidates.end(), rest.begin(), rest.end());
            } else {
                candidates = detail::pair_points(stripped[0], stripped[1]);
            }
        }
    }

    for (const ProjectivePoint& c : candidates) {
        bool ok = true;
        for (const auto& g : grad)
            if (!g.is_zero() && g.evaluate(c.coords) != 0) ok = false;
        if (ok) locus.points.push_back(c);
    }
    detail::dedupe_points(locus.points);
    return locus;
}

// Smoothness over the algebraic closure.  The gradient forms of degree d have
// no common zero (anywhere, not just over the rationals) exactly when every
// form of degree 3d - 2 is a combination sum a_i * grad_i with coefficients of
// degree 2d - 2; that surjectivity is one exact rank computation.
inline bool is_nonsingular(const PlaneCurve& curve) {
    const int d = curve.degree() - 1;
    if (d == 0) return true; // lines are smooth
    const std::array<HomogeneousPolynomial, 3> grad = partials(curve.form);

    const int t = 3 * d - 2;
    const int s = t - d;
    std::vector<Exponents> rows_of, cols_of;
    std::map<Exponents, std::size_t> row_index;
    for (int a = 0; a <= t; ++a)
        for (int b = 0; a + b <= t; ++b) {
            row_index.emplace(Exponents{a, b, t - a - b}, rows_of.size());
            rows_of.push_back({a, b, t - a - b});
        }
    for (int a = 0; a <= s; ++a)
        for (int b = 0; a + b <= s; ++b) cols_of.push_back({a, b, s - a - b});

    RationalMatrix mac(rows_of.size(), 3 * cols_of.size());
    for (std::size_t gi = 0; gi < 3; ++gi)
        for (std::size_t cj = 0; cj < cols_of.size(); ++cj) {
            const Exponents& shift = cols_of[cj];
            for (const auto& [e, c] : grad.at(gi).terms()) {
                const Exponents target{e[0] + shift[0], e[1] + shift[1], e[2] + shift[2]};
                mac(row_index.at(target), gi * cols_of.size() + cj) = c;
            }
        }
    return mac.rank() == rows_of.size();
}

} // namespace p2stab
