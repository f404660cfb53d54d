#pragma once

#include <array>
#include <compare>
#include <cstdint>

#include "rational.hpp"

namespace p2stab {

// Chern data (rank, c1, c2) of a coherent sheaf on the projective plane.
struct ChernData {
    std::int64_t rank;
    std::int64_t c1;
    std::int64_t c2;

    ChernData(std::int64_t r, std::int64_t c1_, std::int64_t c2_) : rank(r), c1(c1_), c2(c2_) {
        if (rank < 1) throw input_error("chern data: rank must be positive");
    }

    bool operator==(const ChernData&) const = default;
};

// chi = r + c1(c1+3)/2 - c2.  c1(c1+3) is always even, so this is an integer.
inline std::int64_t euler_characteristic(const ChernData& c) {
    return c.rank + c.c1 * (c.c1 + 3) / 2 - c.c2;
}

// Coefficients of the reduced Hilbert polynomial
//   p(m) = m^2/2 + (3/2 + c1/r) m + chi/r.
struct ReducedHilbertPolynomial {
    Rational quadratic;
    Rational linear;
    Rational constant;

    bool operator==(const ReducedHilbertPolynomial&) const = default;
};

inline ReducedHilbertPolynomial reduced_hilbert_polynomial(const ChernData& c) {
    ReducedHilbertPolynomial p;
    p.quadratic = make_rational(1, 2);
    p.linear = make_rational(3, 2) + make_rational(c.c1, c.rank);
    p.constant = make_rational(euler_characteristic(c), c.rank);
    return p;
}

// Lexicographic comparison of reduced Hilbert polynomials: slope term first,
// then the Euler-characteristic term.  This is the Gieseker order.
inline std::strong_ordering gieseker_compare(const ChernData& a, const ChernData& b) {
    const ReducedHilbertPolynomial pa = reduced_hilbert_polynomial(a);
    const ReducedHilbertPolynomial pb = reduced_hilbert_polynomial(b);
    if (pa.linear != pb.linear)
        return pa.linear < pb.linear ? std::strong_ordering::less : std::strong_ordering::greater;
    if (pa.constant != pb.constant)
        return pa.constant < pb.constant ? std::strong_ordering::less
                                         : std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

// Cohomology table of a semistable sheaf with c1 = 0 at the twists -2, -1, 0:
// h1 = (c2, c2, c2 - r), with h0 and h2 vanishing throughout that range.
struct SemistableH1Table {
    std::int64_t rank;
    std::int64_t c2;
    std::array<std::int64_t, 3> h1; // twists -2, -1, 0
    bool h0_vanishes = true;
    bool h2_vanishes = true;
};

inline SemistableH1Table semistable_h1_table(std::int64_t rank, std::int64_t c2) {
    if (rank < 1) throw input_error("semistable table: rank must be positive");
    if (c2 < rank)
        throw input_error("semistable table: requires c2 >= rank for semistable sheaves with c1 = 0");
    SemistableH1Table t;
    t.rank = rank;
    t.c2 = c2;
    t.h1 = {c2, c2, c2 - rank};
    return t;
}

} // namespace p2stab
