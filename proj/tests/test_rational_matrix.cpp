#include <catch2/catch_amalgamated.hpp>

#include <p2stab/matrix.hpp>
#include <p2stab/rational.hpp>

#include <functional>

#include "test_support.hpp"

using namespace p2stab;

TEST_CASE("rational construction and canonical form") {
    REQUIRE(make_rational(2, 4) == make_rational(1, 2));
    REQUIRE(make_rational(3, -6) == make_rational(-1, 2));
    REQUIRE(denominator(make_rational(3, -6)) == 2);
    REQUIRE(numerator(make_rational(3, -6)) == -1);
    REQUIRE(make_rational(0, 5) == 0);
    REQUIRE_THROWS_AS(make_rational(1, 0), input_error);
    REQUIRE(parse_rational("-3/9") == make_rational(-1, 3));
    REQUIRE(parse_rational("7") == 7);
    REQUIRE_THROWS_AS(parse_rational("x"), input_error);
    REQUIRE_THROWS_AS(parse_rational("1/0"), input_error);
}

TEST_CASE("matrix product, transpose, identity") {
    RationalMatrix a(2, 3, {Rational(1), Rational(2), Rational(3),
                            Rational(4), Rational(5), Rational(6)});
    RationalMatrix b(3, 2, {Rational(1), Rational(0), Rational(0), Rational(1),
                            Rational(1), Rational(1)});
    RationalMatrix p = a * b;
    REQUIRE(p.rows() == 2);
    REQUIRE(p.cols() == 2);
    REQUIRE(p(0, 0) == 4);
    REQUIRE(p(0, 1) == 5);
    REQUIRE(p(1, 0) == 10);
    REQUIRE(p(1, 1) == 11);
    REQUIRE(a.transpose().transpose() == a);
    REQUIRE(RationalMatrix::identity(3) * b == b);
}

TEST_CASE("determinant: known values") {
    RationalMatrix m(2, 2, {Rational(1), Rational(2), Rational(3), Rational(4)});
    REQUIRE(m.det() == -2);
    RationalMatrix s(3, 3);
    s(0, 2) = 1;
    s(1, 1) = -1;
    s(2, 0) = 1;
    REQUIRE(s.det() == 1);
    RationalMatrix frac(2, 2, {make_rational(1, 2), make_rational(1, 3),
                               make_rational(1, 4), make_rational(1, 5)});
    REQUIRE(frac.det() == make_rational(1, 60));
    RationalMatrix sing(3, 3, {Rational(1), Rational(2), Rational(3),
                               Rational(2), Rational(4), Rational(6),
                               Rational(0), Rational(1), Rational(1)});
    REQUIRE(sing.det() == 0);
}

TEST_CASE("determinant agrees with cofactor expansion on random 4x4") {
    auto rng = testsupport::make_rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        RationalMatrix m = testsupport::random_matrix(rng, 4, 4);
        // Cofactor oracle.
        std::function<Rational(std::vector<std::vector<Rational>>)> cof =
            [&](std::vector<std::vector<Rational>> a) -> Rational {
            const std::size_t n = a.size();
            if (n == 1) return a[0][0];
            Rational acc(0);
            for (std::size_t j = 0; j < n; ++j) {
                if (a[0][j] == 0) continue;
                std::vector<std::vector<Rational>> sub;
                for (std::size_t i = 1; i < n; ++i) {
                    std::vector<Rational> row;
                    for (std::size_t k = 0; k < n; ++k)
                        if (k != j) row.push_back(a[i][k]);
                    sub.push_back(row);
                }
                const Rational term = a[0][j] * cof(sub);
                acc += (j % 2 == 0) ? term : -term;
            }
            return acc;
        };
        std::vector<std::vector<Rational>> rowsv(4, std::vector<Rational>(4));
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) rowsv[i][j] = m(i, j);
        REQUIRE(m.det() == cof(rowsv));
    }
}

TEST_CASE("rank plus nullity equals column count on random matrices") {
    auto rng = testsupport::make_rng(7);
    std::uniform_int_distribution<std::size_t> dim(1, 7);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t r = dim(rng), c = dim(rng);
        RationalMatrix m = testsupport::random_matrix(rng, r, c, 5, 2);
        RationalMatrix ker = m.kernel_basis();
        REQUIRE(m.rank() + ker.cols() == c);
        // Kernel vectors are genuine solutions.
        for (std::size_t k = 0; k < ker.cols(); ++k) {
            std::vector<Rational> x = ker.column(k);
            for (const Rational& v : m.apply(x)) REQUIRE(v == 0);
        }
        // And independent.
        REQUIRE(ker.cols() == ker.rank());
    }
}

TEST_CASE("rref, inverse, solve") {
    RationalMatrix m(3, 3, {Rational(2), Rational(0), Rational(1),
                            Rational(0), Rational(1), Rational(0),
                            Rational(1), Rational(0), Rational(1)});
    RationalMatrix inv = m.inverse();
    REQUIRE(m * inv == RationalMatrix::identity(3));
    REQUIRE(inv * m == RationalMatrix::identity(3));

    const std::vector<Rational> b{Rational(3), Rational(5), Rational(2)};
    auto x = m.solve(b);
    REQUIRE(x.has_value());
    REQUIRE(m.apply(*x) == b);

    RationalMatrix sing(2, 2, {Rational(1), Rational(1), Rational(1), Rational(1)});
    REQUIRE_THROWS_AS(sing.inverse(), input_error);
    REQUIRE_FALSE(sing.solve({Rational(0), Rational(1)}).has_value());
    REQUIRE(sing.solve({Rational(2), Rational(2)}).has_value());
}
