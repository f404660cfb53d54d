#pragma once

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace p2stab {

// ---------------------------------------------------------------------------
// Univariate polynomials: coefficient vector, coeff[k] of t^k.
// ---------------------------------------------------------------------------

using UniPoly = std::vector<Rational>;

inline void uni_trim(UniPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int uni_degree(const UniPoly& p) { return static_cast<int>(p.size()) - 1; }

inline bool uni_is_zero(const UniPoly& p) { return p.empty(); }

inline Rational uni_eval(const UniPoly& p, const Rational& t) {
    Rational s(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * t + *it;
    return s;
}

inline UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
    if (a.empty() || b.empty()) return {};
    UniPoly c(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    uni_trim(c);
    return c;
}

inline UniPoly uni_add(const UniPoly& a, const UniPoly& b) {
    UniPoly c = a;
    if (b.size() > c.size()) c.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    uni_trim(c);
    return c;
}

inline UniPoly uni_sub(const UniPoly& a, const UniPoly& b) {
    UniPoly c = a;
    if (b.size() > c.size()) c.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    uni_trim(c);
    return c;
}

// Remainder of a by b; b nonzero.
inline UniPoly uni_rem(UniPoly a, const UniPoly& b) {
    if (uni_is_zero(b)) throw internal_error("uni_rem: zero divisor");
    uni_trim(a);
    while (!uni_is_zero(a) && a.size() >= b.size()) {
        const Rational f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        uni_trim(a);
    }
    return a;
}

// Monic gcd.
inline UniPoly uni_gcd(UniPoly a, UniPoly b) {
    uni_trim(a);
    uni_trim(b);
    while (!uni_is_zero(b)) {
        UniPoly r = uni_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!uni_is_zero(a)) {
        const Rational lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

// Synthetic division by (t - root); the division must be exact.
inline UniPoly uni_divexact_linear(const UniPoly& p, const Rational& root) {
    if (p.empty()) return {};
    UniPoly q(p.size() - 1, Rational(0));
    Rational carry = p.back();
    for (std::size_t i = p.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = p[i] + carry * root;
    }
    if (carry != 0) throw internal_error("uni_divexact_linear: inexact");
    return q;
}

// Exact Lagrange interpolation through distinct nodes.
inline UniPoly lagrange_interpolate(const std::vector<std::pair<Rational, Rational>>& samples) {
    UniPoly master{Rational(1)};
    for (const auto& [t, y] : samples) master = uni_mul(master, UniPoly{-t, Rational(1)});
    UniPoly acc;
    for (const auto& [t, y] : samples) {
        if (y == 0) continue;
        UniPoly base = uni_divexact_linear(master, t);
        const Rational scale = y / uni_eval(base, t);
        for (auto& c : base) c *= scale;
        acc = uni_add(acc, base);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Integer factorization (complete, desk scale): trial division + Pollard rho.
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_probable_prime(const Integer& n) {
    return boost::multiprecision::miller_rabin_test(n, 32);
}

inline Integer pollard_rho(const Integer& n) {
    if (n % 2 == 0) return 2;
    for (Integer c = 1;; ++c) {
        Integer x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            d = gcd(abs(x - y), n);
        }
        if (d != n) return d;
    }
}

inline void factorize_into(Integer n, std::map<Integer, int>& out) {
    if (n <= 1) return;
    for (Integer p : {Integer(2), Integer(3), Integer(5), Integer(7), Integer(11), Integer(13)}) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    Integer d = 17;
    while (d * d <= n && d < 100000) {
        while (n % d == 0) {
            ++out[d];
            n /= d;
        }
        d += 2;
    }
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    const Integer f = pollard_rho(n);
    factorize_into(f, out);
    factorize_into(n / f, out);
}

inline std::vector<Integer> positive_divisors(const Integer& n) {
    std::map<Integer, int> f;
    factorize_into(abs(n), f);
    std::vector<Integer> divs{Integer(1)};
    for (const auto& [p, e] : f) {
        const std::size_t base = divs.size();
        Integer pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
            if (divs.size() > 200000)
                throw input_error("rational root search: too many divisor candidates");
        }
    }
    return divs;
}

} // namespace detail

// All rational roots of a nonzero univariate polynomial, without multiplicity.
inline std::vector<Rational> rational_roots(UniPoly p) {
    uni_trim(p);
    if (uni_is_zero(p)) throw internal_error("rational_roots: zero polynomial");
    std::set<Rational> roots;
    // Strip powers of t.
    std::size_t low = 0;
    while (low < p.size() && p[low] == 0) ++low;
    if (low > 0) {
        roots.insert(Rational(0));
        p.erase(p.begin(), p.begin() + static_cast<long>(low));
    }
    if (p.size() >= 2) {
        // Integer-primitive form.
        Integer den_lcm = 1;
        for (const auto& c : p) den_lcm = lcm(den_lcm, denominator(c));
        std::vector<Integer> ip(p.size());
        Integer content = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            ip[i] = numerator(p[i] * Rational(den_lcm));
            content = gcd(content, ip[i]);
        }
        for (auto& c : ip) c /= content;

        if (ip.size() == 2) {
            roots.insert(make_rational(-ip[0], ip[1]));
        } else if (ip.size() == 3) {
            const Integer disc = ip[1] * ip[1] - 4 * ip[2] * ip[0];
            if (disc >= 0) {
                const Integer s = sqrt(disc);
                if (s * s == disc) {
                    roots.insert(make_rational(-ip[1] + s, 2 * ip[2]));
                    roots.insert(make_rational(-ip[1] - s, 2 * ip[2]));
                }
            }
        } else {
            for (const Integer& num : detail::positive_divisors(ip.front()))
                for (const Integer& den : detail::positive_divisors(ip.back()))
                    for (int sign : {1, -1}) {
                        const Rational cand = make_rational(sign * num, den);
                        if (uni_eval(p, cand) == 0) roots.insert(cand);
                    }
        }
    }
    return {roots.begin(), roots.end()};
}

// ---------------------------------------------------------------------------
// Exact division and gcd for homogeneous forms.
// ---------------------------------------------------------------------------

inline HomogeneousPolynomial monomial(const Exponents& e, const Rational& c) {
    HomogeneousPolynomial m(e[0] + e[1] + e[2]);
    m.add_term(e, c);
    return m;
}

// Quotient f / g when g divides f exactly (lexicographic long division).
inline HomogeneousPolynomial divide_exact(const HomogeneousPolynomial& f,
                                          const HomogeneousPolynomial& g) {
    if (g.is_zero()) throw internal_error("divide_exact: zero divisor");
    if (f.is_zero()) return HomogeneousPolynomial(std::max(0, f.degree() - g.degree()));
    if (f.degree() < g.degree()) throw internal_error("divide_exact: not divisible");
    HomogeneousPolynomial q(f.degree() - g.degree());
    HomogeneousPolynomial r = f;
    const auto [ge, gc] = g.leading_term();
    while (!r.is_zero()) {
        const auto [re, rc] = r.leading_term();
        const Exponents d{re[0] - ge[0], re[1] - ge[1], re[2] - ge[2]};
        if (d[0] < 0 || d[1] < 0 || d[2] < 0) throw internal_error("divide_exact: not divisible");
        const Rational c = rc / gc;
        q.add_term(d, c);
        r = r - g * monomial(d, c);
    }
    return q;
}

// Scales a nonzero form so its lexicographic leading coefficient is 1.
inline HomogeneousPolynomial monic(const HomogeneousPolynomial& f) {
    if (f.is_zero()) return f;
    return f * (Rational(1) / f.leading_term().second);
}

// Dehomogenization of a form using only variables (i, j):  t^a <- X_i^a X_j^(d-a).
inline UniPoly binary_dehomogenize(const HomogeneousPolynomial& f, int i, int j) {
    const int other = 3 - i - j;
    if (f.degree_in(other) != 0) throw internal_error("binary_dehomogenize: third variable present");
    UniPoly u(static_cast<std::size_t>(f.degree()) + 1, Rational(0));
    for (const auto& [e, c] : f.terms()) u[static_cast<std::size_t>(e.at(i))] = c;
    uni_trim(u);
    return u;
}

inline HomogeneousPolynomial binary_homogenize(const UniPoly& u, int i, int j, int degree) {
    HomogeneousPolynomial f(degree);
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (u[k] == 0) continue;
        Exponents e{0, 0, 0};
        e.at(i) = static_cast<int>(k);
        e.at(j) = degree - static_cast<int>(k);
        f.add_term(e, u[k]);
    }
    return f;
}

// Monic gcd of two nonzero binary forms in variables (i, j).
inline HomogeneousPolynomial binary_gcd(const HomogeneousPolynomial& f,
                                        const HomogeneousPolynomial& g, int i, int j) {
    if (f.is_zero() || g.is_zero()) throw internal_error("binary_gcd: zero argument");
    const UniPoly uf = binary_dehomogenize(f, i, j);
    const UniPoly ug = binary_dehomogenize(g, i, j);
    const int bf = f.degree() - uni_degree(uf); // power of X_j dividing f
    const int bg = g.degree() - uni_degree(ug);
    const UniPoly gu = uni_gcd(uf, ug);
    Exponents e{0, 0, 0};
    e.at(j) = std::min(bf, bg);
    return binary_homogenize(gu, i, j, uni_degree(gu)) * monomial(e, 1);
}

namespace detail {

// Coefficient view of f along variable v: entry k is the coefficient form of v^k.
inline std::vector<HomogeneousPolynomial> coeffs_along(const HomogeneousPolynomial& f, int v) {
    const int top = f.degree_in(v);
    std::vector<HomogeneousPolynomial> out;
    out.reserve(static_cast<std::size_t>(top) + 1);
    for (int k = 0; k <= top; ++k) out.emplace_back(f.degree() - k);
    for (const auto& [e, c] : f.terms()) {
        Exponents stripped = e;
        stripped.at(v) = 0;
        out[static_cast<std::size_t>(e.at(v))].add_term(stripped, c);
    }
    return out;
}

// Content of f with respect to v: gcd of the v-coefficient forms (binary in the
// other two variables).
inline HomogeneousPolynomial content_along(const HomogeneousPolynomial& f, int v) {
    const int o1 = v == 0 ? 1 : 0;
    const int o2 = v == 2 ? 1 : 2;
    HomogeneousPolynomial acc(0);
    bool first = true;
    for (const auto& c : coeffs_along(f, v)) {
        if (c.is_zero()) continue;
        if (first) {
            acc = monic(c);
            first = false;
        } else {
            acc = binary_gcd(acc, c, o1, o2);
        }
        if (acc.degree() == 0) break;
    }
    if (first) throw internal_error("content_along: zero polynomial");
    return acc;
}

// Pseudo-remainder of a by b along variable v (deg_v a >= deg_v b >= 1).
inline HomogeneousPolynomial pseudo_rem(HomogeneousPolynomial a, const HomogeneousPolynomial& b,
                                        int v) {
    const int db = b.degree_in(v);
    auto bc = coeffs_along(b, v);
    const HomogeneousPolynomial& lb = bc.back();
    while (!a.is_zero() && a.degree_in(v) >= db) {
        const int da = a.degree_in(v);
        auto ac = coeffs_along(a, v);
        Exponents shift{0, 0, 0};
        shift.at(v) = da - db;
        a = a * lb - ac.back() * monomial(shift, 1) * b;
    }
    return a;
}

} // namespace detail

// Monic gcd of two homogeneous forms in three variables (primitive PRS).
inline HomogeneousPolynomial poly_gcd(const HomogeneousPolynomial& f,
                                      const HomogeneousPolynomial& g) {
    if (f.is_zero() && g.is_zero()) throw internal_error("poly_gcd: both arguments zero");
    if (f.is_zero()) return monic(g);
    if (g.is_zero()) return monic(f);
    if (f.degree() == 0 || g.degree() == 0) return HomogeneousPolynomial::constant(1);

    // Shared variable of positive degree in both; none means coprime supports.
    int v = -1;
    for (int cand = 2; cand >= 0; --cand)
        if (f.degree_in(cand) > 0 && g.degree_in(cand) > 0) {
            v = cand;
            break;
        }
    if (v == -1) return HomogeneousPolynomial::constant(1);
    const int o1 = v == 0 ? 1 : 0;
    const int o2 = v == 2 ? 1 : 2;

    const HomogeneousPolynomial cf = detail::content_along(f, v);
    const HomogeneousPolynomial cg = detail::content_along(g, v);
    HomogeneousPolynomial a = divide_exact(f, cf);
    HomogeneousPolynomial b = divide_exact(g, cg);
    if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);

    HomogeneousPolynomial gcd_pp = HomogeneousPolynomial::constant(1);
    while (true) {
        if (b.is_zero()) {
            gcd_pp = a; // already primitive
            break;
        }
        if (b.degree_in(v) == 0) {
            // Primitive and v-free means constant content: coprime parts.
            break;
        }
        HomogeneousPolynomial r = detail::pseudo_rem(a, b, v);
        if (!r.is_zero()) r = divide_exact(r, detail::content_along(r, v));
        a = std::move(b);
        b = std::move(r);
    }

    const HomogeneousPolynomial content_gcd =
        (cf.degree() == 0 || cg.degree() == 0) ? HomogeneousPolynomial::constant(1)
                                               : binary_gcd(cf, cg, o1, o2);
    return monic(content_gcd * gcd_pp);
}

inline HomogeneousPolynomial poly_gcd3(const HomogeneousPolynomial& f,
                                       const HomogeneousPolynomial& g,
                                       const HomogeneousPolynomial& h) {
    return poly_gcd(poly_gcd(f, g), h);
}

// Product of the distinct irreducible factors of a nonzero form (monic).  In
// characteristic zero this is f / gcd(f, all partial derivatives).
inline HomogeneousPolynomial squarefree_part(const HomogeneousPolynomial& f) {
    if (f.is_zero()) throw internal_error("squarefree_part: zero polynomial");
    if (f.degree() == 0) return HomogeneousPolynomial::constant(1);
    HomogeneousPolynomial d = f;
    for (int v = 0; v < 3; ++v) {
        const HomogeneousPolynomial p = partial(f, v);
        if (!p.is_zero()) d = poly_gcd(d, p);
    }
    return monic(divide_exact(f, d));
}

// Projective rational roots of a nonzero binary form in variables (i, j),
// returned as (value_i, value_j) pairs: finite roots as (t, 1), the root at
// infinity as (1, 0).
inline std::vector<std::array<Rational, 2>> binary_projective_roots(const HomogeneousPolynomial& f,
                                                                    int i, int j) {
    if (f.is_zero()) throw internal_error("binary_projective_roots: zero form");
    std::vector<std::array<Rational, 2>> out;
    const UniPoly u = binary_dehomogenize(f, i, j);
    if (uni_degree(u) < f.degree()) out.push_back({Rational(1), Rational(0)});
    if (uni_degree(u) >= 1)
        for (const Rational& t : rational_roots(u)) out.push_back({t, Rational(1)});
    return out;
}

} // namespace p2stab
