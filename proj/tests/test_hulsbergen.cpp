#include <catch2/catch_amalgamated.hpp>

#include <p2stab/hulsbergen.hpp>

#include "test_support.hpp"

using namespace p2stab;

namespace {

HomogeneousPolynomial var(int i) { return HomogeneousPolynomial::variable(i); }

const HomogeneousPolynomial X = var(0);
const HomogeneousPolynomial Y = var(1);
const HomogeneousPolynomial Z = var(2);

ProjectivePoint pt(int x, int y, int z) {
    return ProjectivePoint(Rational(x), Rational(y), Rational(z));
}

std::vector<Rational> ones(std::size_t k) { return std::vector<Rational>(k, Rational(1)); }

PointConfiguration random_config(std::mt19937_64& rng, std::size_t size) {
    std::uniform_int_distribution<int> c(-4, 4);
    std::vector<ProjectivePoint> pts;
    while (pts.size() < size) {
        const int x = c(rng), y = c(rng), z = c(rng);
        if (x == 0 && y == 0 && z == 0) continue;
        const ProjectivePoint p = pt(x, y, z);
        bool dup = false;
        for (const auto& q : pts)
            if (q == p) dup = true;
        if (!dup) pts.push_back(p);
    }
    std::vector<Rational> coeffs;
    for (std::size_t i = 0; i < size; ++i)
        coeffs.push_back(testsupport::random_nonzero_rational(rng, 5, 3));
    return PointConfiguration(std::move(pts), std::move(coeffs));
}

} // namespace

TEST_CASE("configuration validation") {
    REQUIRE_THROWS_AS(PointConfiguration({pt(1, 0, 0)}, ones(1)), input_error);
    REQUIRE_THROWS_AS(PointConfiguration({pt(1, 0, 0), pt(2, 0, 0)}, ones(2)), input_error);
    REQUIRE_THROWS_AS(PointConfiguration({pt(1, 0, 0), pt(0, 1, 0)}, ones(3)), input_error);
    REQUIRE_THROWS_AS(PointConfiguration({pt(1, 0, 0), pt(0, 1, 0)},
                                         {Rational(1), Rational(0)}),
                      input_error);
    const PointConfiguration ok({pt(1, 0, 0), pt(0, 1, 0)}, ones(2));
    REQUIRE(ok.n() == 1);
}

TEST_CASE("lines and incidence") {
    const ProjectiveLine l = line_through(pt(1, 0, 0), pt(0, 1, 0));
    REQUIRE(l == ProjectiveLine(Rational(0), Rational(0), Rational(5)));
    REQUIRE(lies_on(pt(1, -7, 0), l));
    REQUIRE_FALSE(lies_on(pt(0, 0, 1), l));
    REQUIRE_THROWS_AS(line_through(pt(1, 2, 3), pt(2, 4, 6)), input_error);
}

TEST_CASE("jump curve: frozen examples") {
    // Coordinate triangle: dual forms are the bare variables.
    const PointConfiguration tri({pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)},
                                 {Rational(2), Rational(3), Rational(5)});
    REQUIRE(jump_curve(tri) == Rational(2) * Y * Z + Rational(3) * X * Z + Rational(5) * X * Y);

    // Triangle plus the unit point.
    const PointConfiguration four({pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(1, 1, 1)}, ones(4));
    REQUIRE(jump_curve(four) == (X + Y + Z) * (X * Y + X * Z + Y * Z) + X * Y * Z);

    // Two points give the pencil-weighted line.
    const PointConfiguration duo({pt(1, 0, 0), pt(0, 1, 0)}, {Rational(1), Rational(4)});
    REQUIRE(jump_curve(duo) == Y + Rational(4) * X);
}

TEST_CASE("jump curve degree law and nonvanishing") {
    auto rng = testsupport::make_rng(71);
    std::uniform_int_distribution<std::size_t> size(2, 7);
    for (int trial = 0; trial < 15; ++trial) {
        const PointConfiguration z = random_config(rng, size(rng));
        const HomogeneousPolynomial j = jump_curve(z);
        REQUIRE_FALSE(j.is_zero());
        REQUIRE(j.degree() == z.n());
        REQUIRE(j.degree() == static_cast<int>(z.points.size()) - 1);
    }
}

TEST_CASE("jump curve vanishes on every secant") {
    auto rng = testsupport::make_rng(72);
    std::uniform_int_distribution<std::size_t> size(3, 7);
    for (int trial = 0; trial < 10; ++trial) {
        const PointConfiguration z = random_config(rng, size(rng));
        const HomogeneousPolynomial j = jump_curve(z);
        for (std::size_t a = 0; a < z.points.size(); ++a)
            for (std::size_t b = a + 1; b < z.points.size(); ++b) {
                const ProjectiveLine sec = line_through(z.points[a], z.points[b]);
                REQUIRE(j.evaluate({sec.coeffs[0], sec.coeffs[1], sec.coeffs[2]}) == 0);
            }
    }
}

TEST_CASE("jump curve transforms by the transpose") {
    auto rng = testsupport::make_rng(73);
    std::uniform_int_distribution<std::size_t> size(2, 6);
    for (int trial = 0; trial < 10; ++trial) {
        const PointConfiguration z = random_config(rng, size(rng));
        const RationalMatrix g = testsupport::random_unimodular(rng);
        REQUIRE(jump_curve(transform_configuration(z, g)) ==
                substitute(jump_curve(z), g.transpose()));
    }
    // Also exact for maps that rescale (nothing is renormalized on the way).
    const PointConfiguration z = random_config(rng, 4);
    RationalMatrix d = RationalMatrix::identity(3);
    d(0, 0) = make_rational(2, 3);
    d(2, 2) = -5;
    REQUIRE(jump_curve(transform_configuration(z, d)) == substitute(jump_curve(z), d.transpose()));
}

TEST_CASE("splitting on lines") {
    const PointConfiguration seven(
        {pt(1, 0, 0), pt(0, 1, 0), pt(1, 1, 0), pt(1, 2, 0), pt(1, 3, 0), pt(1, 4, 0), pt(0, 0, 1)},
        ones(7));
    const ProjectiveLine heavy(Rational(0), Rational(0), Rational(1));
    const LineSplitting s = splitting_on_line(seven, heavy);
    REQUIRE(s.incident == 6);
    REQUIRE(s.d == 5);
    REQUIRE(splitting_on_line(seven, ProjectiveLine(Rational(1), Rational(0), Rational(0))).d == 1);
    const LineSplitting none =
        splitting_on_line(seven, ProjectiveLine(Rational(1), Rational(1), Rational(1)));
    REQUIRE(none.incident == 0);
    REQUIRE(none.d == 0);
}

TEST_CASE("stability of configurations") {
    // Six points of seven on a line: splitting (5, -5) against n = 6.
    const PointConfiguration seven(
        {pt(1, 0, 0), pt(0, 1, 0), pt(1, 1, 0), pt(1, 2, 0), pt(1, 3, 0), pt(1, 4, 0), pt(0, 0, 1)},
        ones(7));
    const ConfigStabilityResult r = check_configuration_stability(seven);
    REQUIRE(r.verdict == ConfigStabilityResult::Verdict::unstable);
    REQUIRE(r.max_split == 5);
    REQUIRE(r.certificate.has_value());
    REQUIRE(r.certificate->line == ProjectiveLine(Rational(0), Rational(0), Rational(1)));
    REQUIRE(r.certificate->incident == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
    REQUIRE(verify_configuration_certificate(seven, *r.certificate));

    ConfigInstabilityCertificate bad_d = *r.certificate;
    bad_d.d = 6;
    REQUIRE_FALSE(verify_configuration_certificate(seven, bad_d));
    ConfigInstabilityCertificate bad_inc = *r.certificate;
    bad_inc.incident.pop_back();
    REQUIRE_FALSE(verify_configuration_certificate(seven, bad_inc));
    ConfigInstabilityCertificate bad_line = *r.certificate;
    bad_line.line = ProjectiveLine(Rational(1), Rational(0), Rational(0));
    REQUIRE_FALSE(verify_configuration_certificate(seven, bad_line));

    // General position: five points, no three collinear.
    const PointConfiguration general(
        {pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(1, 1, 1), pt(1, 2, 3)}, ones(5));
    const ConfigStabilityResult g = check_configuration_stability(general);
    REQUIRE(g.verdict == ConfigStabilityResult::Verdict::semistable);
    REQUIRE(g.max_split == 1);
    REQUIRE_FALSE(g.boundary);
    REQUIRE_FALSE(g.certificate.has_value());

    // Exactly at the threshold: three points of four on a line, 3d = 2n.
    const PointConfiguration border({pt(1, 0, 0), pt(0, 1, 0), pt(1, 1, 0), pt(0, 0, 1)}, ones(4));
    const ConfigStabilityResult b = check_configuration_stability(border);
    REQUIRE(b.verdict == ConfigStabilityResult::Verdict::semistable);
    REQUIRE(b.max_split == 2);
    REQUIRE(b.boundary);

    // Fully collinear configurations are always unstable.
    const PointConfiguration line({pt(1, 0, 0), pt(0, 1, 0), pt(1, 1, 0), pt(1, 2, 0)}, ones(4));
    REQUIRE(coordinate_rank(line) == 2);
    REQUIRE(check_configuration_stability(line).verdict ==
            ConfigStabilityResult::Verdict::unstable);
    REQUIRE(coordinate_rank(seven) == 3);
}

TEST_CASE("chern data of a configuration") {
    auto rng = testsupport::make_rng(74);
    for (std::size_t size : {2, 4, 7}) {
        const PointConfiguration z = random_config(rng, size);
        const ChernData c = chern_data(z);
        REQUIRE(c.rank == 2);
        REQUIRE(c.c1 == 0);
        REQUIRE(c.c2 == z.n());
        REQUIRE(euler_characteristic(c) == 2 - z.n());
        if (z.n() >= 2) {
            const SemistableH1Table t = semistable_h1_table(2, z.n());
            REQUIRE(t.h1 == std::array<std::int64_t, 3>{z.n(), z.n(), z.n() - 2});
        }
    }
}
