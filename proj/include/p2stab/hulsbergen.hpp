#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <vector>

#include "curves.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"
#include "sheaves.hpp"

namespace p2stab {

// Line of the projective plane, stored by its coefficient vector: the locus of
// points x with  l0 x0 + l1 x1 + l2 x2 = 0.
struct ProjectiveLine {
    std::array<Rational, 3> coeffs;

    ProjectiveLine(Rational a, Rational b, Rational c) : coeffs{std::move(a), std::move(b), std::move(c)} {
        if (coeffs[0] == 0 && coeffs[1] == 0 && coeffs[2] == 0)
            throw input_error("projective line: all coefficients are zero");
    }

    explicit ProjectiveLine(const std::array<Rational, 3>& c) : ProjectiveLine(c[0], c[1], c[2]) {}

    bool operator==(const ProjectiveLine& o) const {
        return ProjectivePoint(coeffs) == ProjectivePoint(o.coeffs);
    }

    std::string to_string() const { return ProjectivePoint(coeffs).to_string(); }
};

inline Rational incidence_pairing(const ProjectivePoint& p, const ProjectiveLine& l) {
    return p.coords[0] * l.coeffs[0] + p.coords[1] * l.coeffs[1] + p.coords[2] * l.coeffs[2];
}

inline bool lies_on(const ProjectivePoint& p, const ProjectiveLine& l) {
    return incidence_pairing(p, l) == 0;
}

// The unique line through two distinct points (cross product of representatives).
inline ProjectiveLine line_through(const ProjectivePoint& p, const ProjectivePoint& q) {
    const auto& a = p.coords;
    const auto& b = q.coords;
    std::array<Rational, 3> c{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                              a[0] * b[1] - a[1] * b[0]};
    if (c[0] == 0 && c[1] == 0 && c[2] == 0)
        throw input_error("line through points: the points coincide");
    return ProjectiveLine(c);
}

// Weighted configuration of distinct points of the plane: the data behind a
// rank-2 sheaf with c1 = 0 and c2 = (number of points) - 1.  Representatives
// are stored exactly as given; the jump curve below depends on them only up to
// overall scale per point, and keeping them raw makes the equivariance
// identity an equality of forms rather than of proportionality classes.
struct PointConfiguration {
    std::vector<ProjectivePoint> points;
    std::vector<Rational> coefficients;

    PointConfiguration(std::vector<ProjectivePoint> pts, std::vector<Rational> coeffs)
        : points(std::move(pts)), coefficients(std::move(coeffs)) {
        if (points.size() < 2)
            throw input_error("point configuration: at least two points are required");
        if (coefficients.size() != points.size())
            throw input_error("point configuration: one coefficient per point is required");
        for (const Rational& a : coefficients)
            if (a == 0) throw input_error("point configuration: coefficients must be nonzero");
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i + 1; j < points.size(); ++j)
                if (points[i] == points[j])
                    throw input_error("point configuration: points must be pairwise distinct");
    }

    // Degree of the jump curve; also c2 of the associated sheaf.
    int n() const { return static_cast<int>(points.size()) - 1; }
};

inline ChernData chern_data(const PointConfiguration& z) { return {2, 0, z.n()}; }

// The pencil of lines through x, as a linear form on the dual plane.
inline HomogeneousPolynomial dual_line_form(const ProjectivePoint& x) {
    HomogeneousPolynomial l(1);
    l.add_term({1, 0, 0}, x.coords[0]);
    l.add_term({0, 1, 0}, x.coords[1]);
    l.add_term({0, 0, 1}, x.coords[2]);
    return l;
}

// Curve of jumping lines in the dual plane:
//   J = sum_i a_i * prod_{j != i} L_j,   L_j the dual form of the j-th point.
// Degree is always (number of points) - 1: the form cannot vanish identically,
// because on a line through exactly one configuration point only one summand
// survives.
inline HomogeneousPolynomial jump_curve(const PointConfiguration& z) {
    const std::size_t m = z.points.size();
    std::vector<HomogeneousPolynomial> dual;
    dual.reserve(m);
    for (const ProjectivePoint& p : z.points) dual.push_back(dual_line_form(p));
    // Prefix and suffix products avoid recomputing each almost-full product.
    std::vector<HomogeneousPolynomial> prefix, suffix(m, HomogeneousPolynomial(0));
    prefix.reserve(m + 1);
    prefix.push_back(HomogeneousPolynomial::constant(1));
    for (std::size_t i = 0; i < m; ++i) prefix.push_back(prefix.back() * dual[i]);
    HomogeneousPolynomial tail = HomogeneousPolynomial::constant(1);
    for (std::size_t i = m; i-- > 0;) {
        suffix[i] = tail;
        tail = dual[i] * tail;
    }
    HomogeneousPolynomial j(z.n());
    for (std::size_t i = 0; i < m; ++i)
        j = j + prefix[i] * suffix[i] * z.coefficients[i];
    if (j.is_zero()) throw internal_error("jump curve: vanished for a valid configuration");
    return j;
}

// Rank of the matrix of point representatives; 3 means the configuration
// spans the plane, 2 means collinear.
inline std::size_t coordinate_rank(const PointConfiguration& z) {
    RationalMatrix m(z.points.size(), 3);
    for (std::size_t i = 0; i < z.points.size(); ++i)
        for (std::size_t c = 0; c < 3; ++c) m(i, c) = z.points[i].coords.at(c);
    return m.rank();
}

// Restriction type of the associated sheaf on a line: k incident configuration
// points split it as O(d) + O(-d) with d = max(k - 1, 0).
struct LineSplitting {
    std::size_t incident;
    int d;
};

inline LineSplitting splitting_on_line(const PointConfiguration& z, const ProjectiveLine& l) {
    std::size_t k = 0;
    for (const ProjectivePoint& p : z.points)
        if (lies_on(p, l)) ++k;
    return {k, k == 0 ? 0 : static_cast<int>(k) - 1};
}

// Witness of instability: a line whose splitting order d beats 2n/3.
struct ConfigInstabilityCertificate {
    ProjectiveLine line;
    std::vector<std::size_t> incident; // indices of the configuration points on the line
    int d;
    int degree; // n, the jump-curve degree
};

struct ConfigStabilityResult {
    enum class Verdict { unstable, semistable };
    Verdict verdict;
    int max_split;  // largest d over all lines
    bool boundary;  // 3 * max_split == 2n exactly
    std::optional<ConfigInstabilityCertificate> certificate;
};

// Decides (in)stability of the configuration sheaf.  Only lines through at
// least two of the points can carry a positive splitting order, so scanning
// the secants finds the maximum over all lines of the plane.
inline ConfigStabilityResult check_configuration_stability(const PointConfiguration& z) {
    const int n = z.n();
    int best_d = 0;
    std::optional<ProjectiveLine> best_line;
    for (std::size_t i = 0; i < z.points.size(); ++i)
        for (std::size_t j = i + 1; j < z.points.size(); ++j) {
            const ProjectiveLine l = line_through(z.points[i], z.points[j]);
            const LineSplitting s = splitting_on_line(z, l);
            if (s.d > best_d) {
                best_d = s.d;
                best_line = l;
            }
        }

    ConfigStabilityResult res{ConfigStabilityResult::Verdict::semistable, best_d,
                              3 * best_d == 2 * n, std::nullopt};
    if (3 * best_d > 2 * n) {
        res.verdict = ConfigStabilityResult::Verdict::unstable;
        std::vector<std::size_t> incident;
        for (std::size_t i = 0; i < z.points.size(); ++i)
            if (lies_on(z.points[i], *best_line)) incident.push_back(i);
        res.certificate = ConfigInstabilityCertificate{*best_line, incident, best_d, n};
    }
    return res;
}

inline bool verify_configuration_certificate(const PointConfiguration& z,
                                             const ConfigInstabilityCertificate& cert) {
    if (cert.degree != z.n()) return false;
    if (3 * cert.d <= 2 * cert.degree) return false;
    std::vector<std::size_t> incident;
    for (std::size_t i = 0; i < z.points.size(); ++i)
        if (lies_on(z.points[i], cert.line)) incident.push_back(i);
    if (incident != cert.incident) return false;
    return static_cast<int>(incident.size()) - 1 == cert.d;
}

// The configuration moved by g: every representative is multiplied through,
// coefficients unchanged.  The jump curve of the image equals the original
// jump curve precomposed with the transpose of g.
inline PointConfiguration transform_configuration(const PointConfiguration& z,
                                                  const RationalMatrix& g) {
    if (g.rows() != 3 || g.cols() != 3 || g.det() == 0)
        throw input_error("transform: need an invertible 3x3 matrix");
    std::vector<ProjectivePoint> moved;
    moved.reserve(z.points.size());
    for (const ProjectivePoint& p : z.points) {
        const std::vector<Rational> q = g.apply({p.coords[0], p.coords[1], p.coords[2]});
        moved.emplace_back(q[0], q[1], q[2]);
    }
    return PointConfiguration(std::move(moved), z.coefficients);
}

} // namespace p2stab
