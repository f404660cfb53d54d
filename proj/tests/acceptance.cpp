// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails. All randomness is
// seeded, so a run is reproducible bit for bit.

#include <p2stab/analysis.hpp>
#include <p2stab/io.hpp>

#include "corpus.hpp"
#include "test_support.hpp"

#include <compare>
#include <exception>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace p2stab;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    std::cout << (ok ? "PASS" : "FAIL") << "  " << number << "  " << label;
    if (!ok && !detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
}

ProjectivePoint coordinate_point(int k) {
    std::array<Rational, 3> c{Rational(0), Rational(0), Rational(0)};
    c[static_cast<std::size_t>(k)] = Rational(1);
    return ProjectivePoint{c};
}

ProjectivePoint random_point(std::mt19937_64& rng) {
    for (;;) {
        std::array<Rational, 3> c{testsupport::random_rational(rng, 5, 2),
                                  testsupport::random_rational(rng, 5, 2),
                                  testsupport::random_rational(rng, 5, 2)};
        if (c[0] != 0 || c[1] != 0 || c[2] != 0) return ProjectivePoint{c};
    }
}

PointConfiguration random_configuration(std::mt19937_64& rng, std::size_t size) {
    for (;;) {
        std::vector<ProjectivePoint> pts;
        while (pts.size() < size) {
            ProjectivePoint p = random_point(rng);
            bool fresh = true;
            for (const ProjectivePoint& q : pts)
                if (q == p) fresh = false;
            if (fresh) pts.push_back(std::move(p));
        }
        std::vector<Rational> coeffs;
        for (std::size_t i = 0; i < size; ++i)
            coeffs.push_back(testsupport::random_nonzero_rational(rng, 4, 2));
        return PointConfiguration{std::move(pts), std::move(coeffs)};
    }
}

std::array<Rational, 3> random_covector(std::mt19937_64& rng) {
    for (;;) {
        std::array<Rational, 3> l{testsupport::random_rational(rng, 5, 2),
                                  testsupport::random_rational(rng, 5, 2),
                                  testsupport::random_rational(rng, 5, 2)};
        if (l[0] != 0 || l[1] != 0 || l[2] != 0) return l;
    }
}

// phi specializes to diag(l1, l2) in the first two slots with a swap block,
// giving the determinant l1*l3 - l2^2.
Monad conic_monad() {
    RationalMatrix a1(2, 2), a2(2, 2), a3(2, 2);
    a1(0, 0) = 1;
    a2(0, 1) = 1;
    a2(1, 0) = 1;
    a3(1, 1) = 1;
    return Monad(2, 2, {a1, a2, a3}, std::nullopt);
}

// Places k of the n spanning vectors inside H (x) <e1, e2>.
Monad planted_monad(int n, int k) {
    RationalMatrix a1(n, n), a2(n, n), a3(n, n);
    for (int s = 0; s < n; ++s) {
        if (s < k) {
            a1(s, s) = 1;
            a2(s, s) = 1;
        } else {
            a3(s, s) = 1;
        }
    }
    return Monad(n, n, {a1, a2, a3}, std::nullopt);
}

}  // namespace

int main() {
    criterion(1, "planted high multiplicity destabilizes random curves", [](std::string& detail) {
        std::mt19937_64 rng = testsupport::make_rng(101);
        const ProjectivePoint origin = coordinate_point(2);
        for (int trial = 0; trial < 20; ++trial) {
            const int n = 3 + trial % 6;
            const int ceil_two_thirds = (2 * n + 2) / 3;
            HomogeneousPolynomial f(n);
            for (int a = 0; a <= n; ++a)
                for (int b = 0; a + b <= n; ++b)
                    if (a + b > ceil_two_thirds)
                        f.add_term({a, b, n - a - b}, testsupport::random_nonzero_rational(rng, 6, 2));
            const PlaneCurve curve(f);
            const auto res = check_point_instability(curve, origin);
            if (res.verdict != PointInstabilityResult::Verdict::unstable || !res.certificate) {
                detail = "trial " + std::to_string(trial) + ": no certificate at degree " + std::to_string(n);
                return false;
            }
            if (mu_curve(curve, DiagonalOnePS(1, 1, -2)) >= 0) {
                detail = "trial " + std::to_string(trial) + ": weight sum not negative";
                return false;
            }
        }
        return true;
    });

    criterion(2, "the Fermat cubic defeats every diagonal subgroup in range", [](std::string& detail) {
        HomogeneousPolynomial f(3);
        f.add_term({3, 0, 0}, 1);
        f.add_term({0, 3, 0}, 1);
        f.add_term({0, 0, 3}, 1);
        const PlaneCurve fermat(f);
        if (!is_nonsingular(fermat)) {
            detail = "curve reported singular";
            return false;
        }
        for (long long w1 = -6; w1 <= 6; ++w1)
            for (long long w2 = -6; w2 <= 6; ++w2) {
                const long long w3 = -w1 - w2;
                if (w3 < -6 || w3 > 6) continue;
                if (w1 == 0 && w2 == 0 && w3 == 0) continue;
                if (mu_curve(fermat, DiagonalOnePS(w1, w2, w3)) <= 0) {
                    detail = "nonpositive weight sum at (" + std::to_string(w1) + "," +
                             std::to_string(w2) + "," + std::to_string(w3) + ")";
                    return false;
                }
            }
        return true;
    });

    criterion(3, "the coordinate triangle yields the smooth dual conic", [](std::string& detail) {
        const PointConfiguration z{{coordinate_point(0), coordinate_point(1), coordinate_point(2)},
                                   {Rational(1), Rational(1), Rational(1)}};
        const HomogeneousPolynomial jc = jump_curve(z);
        HomogeneousPolynomial expected(2);
        expected.add_term({1, 1, 0}, 1);
        expected.add_term({1, 0, 1}, 1);
        expected.add_term({0, 1, 1}, 1);
        const Rational ratio = jc.coeff({1, 1, 0});
        if (ratio == 0 || jc != expected * ratio) {
            detail = "jump curve is not the symmetric conic";
            return false;
        }
        if (jc.degree() != 2 || chern_data(z).c2 != 2) {
            detail = "degree does not match c2";
            return false;
        }
        if (!is_nonsingular(PlaneCurve(jc))) {
            detail = "dual conic reported singular";
            return false;
        }
        return true;
    });

    criterion(4, "jump curves of random configurations have degree size minus one", [](std::string& detail) {
        std::mt19937_64 rng = testsupport::make_rng(404);
        for (int n = 2; n <= 6; ++n)
            for (int trial = 0; trial < 10; ++trial) {
                const PointConfiguration z = random_configuration(rng, static_cast<std::size_t>(n) + 1);
                const HomogeneousPolynomial jc = jump_curve(z);
                if (jc.is_zero() || jc.degree() != n) {
                    detail = "degenerate jump curve at n " + std::to_string(n) + " trial " +
                             std::to_string(trial);
                    return false;
                }
            }
        return true;
    });

    criterion(5, "jump curves vanish on every secant of the configuration", [](std::string& detail) {
        std::mt19937_64 rng = testsupport::make_rng(505);
        for (int n = 2; n <= 6; ++n)
            for (int trial = 0; trial < 10; ++trial) {
                const PointConfiguration z = random_configuration(rng, static_cast<std::size_t>(n) + 1);
                const HomogeneousPolynomial jc = jump_curve(z);
                for (std::size_t i = 0; i < z.points.size(); ++i)
                    for (std::size_t j = i + 1; j < z.points.size(); ++j) {
                        const ProjectiveLine l = line_through(z.points[i], z.points[j]);
                        if (jc.evaluate(l.coeffs) != 0) {
                            detail = "nonzero value on the secant through points " +
                                     std::to_string(i) + " and " + std::to_string(j);
                            return false;
                        }
                    }
            }
        return true;
    });

    criterion(6, "jump curves transform equivariantly under unimodular moves", [](std::string& detail) {
        std::mt19937_64 rng = testsupport::make_rng(606);
        for (int n = 2; n <= 4; ++n) {
            const PointConfiguration z = random_configuration(rng, static_cast<std::size_t>(n) + 1);
            const HomogeneousPolynomial jc = jump_curve(z);
            for (int trial = 0; trial < 10; ++trial) {
                const RationalMatrix g = testsupport::random_unimodular(rng);
                const HomogeneousPolynomial moved = jump_curve(transform_configuration(z, g));
                const HomogeneousPolynomial expected = substitute(jc, g.transpose());
                if (!detail::forms_proportional(moved, expected)) {
                    detail = "transform mismatch at n " + std::to_string(n) + " trial " +
                             std::to_string(trial);
                    return false;
                }
            }
        }
        return true;
    });

    criterion(7, "the pencil determinant tracks the splitting lines", [](std::string& detail) {
        const Monad m = conic_monad();
        const JumpDivisor jd = jump_divisor(m);
        HomogeneousPolynomial expected(2);
        expected.add_term({1, 0, 1}, 1);
        expected.add_term({0, 2, 0}, -1);
        const Rational ratio = jd.form.coeff({1, 0, 1});
        if (jd.degenerate || ratio == 0 || jd.form != expected * ratio) {
            detail = "determinant is not l1*l3 - l2^2 up to scale";
            return false;
        }
        std::mt19937_64 rng = testsupport::make_rng(707);
        for (int trial = 0; trial < 100; ++trial) {
            const std::array<Rational, 3> l = random_covector(rng);
            const bool splits = splitting_count_on_line(m, l) > 0;
            const bool vanishes = jd.form.evaluate(l) == 0;
            if (splits != vanishes) {
                detail = "splitting and vanishing disagree at trial " + std::to_string(trial);
                return false;
            }
        }
        return true;
    });

    criterion(8, "planted subspaces force splitting counts and instability", [](std::string& detail) {
        const std::array<Rational, 3> l{Rational(0), Rational(0), Rational(1)};
        for (int n : {3, 6, 9})
            for (int k = 2 * n / 3 + 1; k <= n; ++k) {
                const Monad m = planted_monad(n, k);
                if (splitting_count_on_line(m, l) != k) {
                    detail = "splitting count mismatch at n " + std::to_string(n) + " k " +
                             std::to_string(k);
                    return false;
                }
                const SubspaceInstabilityResult res = large_m_verdict(m, l);
                if (res.verdict != SubspaceInstabilityResult::Verdict::unstable ||
                    res.dim_kprime != static_cast<std::size_t>(k)) {
                    detail = "verdict mismatch at n " + std::to_string(n) + " k " + std::to_string(k);
                    return false;
                }
            }
        return true;
    });

    criterion(9, "line intersections of K and Lstar behave as planted", [](std::string& detail) {
        std::mt19937_64 rng = testsupport::make_rng(909);

        // Planted pure tensors h (x) v defeat injectivity along v.
        for (int trial = 0; trial < 10; ++trial) {
            const int n = 2 + trial % 4;
            const std::array<Rational, 3> v = random_covector(rng);
            for (;;) {
                std::array<RationalMatrix, 3> a{testsupport::random_matrix(rng, n, n, 4, 1),
                                                testsupport::random_matrix(rng, n, n, 4, 1),
                                                testsupport::random_matrix(rng, n, n, 4, 1)};
                for (int mm = 0; mm < 3; ++mm)
                    for (int i = 0; i < n; ++i)
                        a[static_cast<std::size_t>(mm)](static_cast<std::size_t>(i), 0) =
                            i == 0 ? v[static_cast<std::size_t>(mm)] : Rational(0);
                try {
                    const Monad m(n, n, std::move(a), std::nullopt);
                    if (alpha_injective(m, v)) {
                        detail = "planted tensor not detected at trial " + std::to_string(trial);
                        return false;
                    }
                    break;
                } catch (const input_error&) {
                    continue; // dependent columns, draw again
                }
            }
        }

        // Random pairs: injectivity must match the direct intersection, and
        // the generic draws must actually be injective.
        int injective_seen = 0;
        for (int trial = 0; trial < 400 && injective_seen < 20; ++trial) {
            const int n = 2 + trial % 3;
            try {
                const Monad m(n, n,
                              {testsupport::random_matrix(rng, n, n, 4, 1),
                               testsupport::random_matrix(rng, n, n, 4, 1),
                               testsupport::random_matrix(rng, n, n, 4, 1)},
                              std::nullopt);
                const std::array<Rational, 3> v = random_covector(rng);
                const Subspace span = Subspace::from_vectors(3, {{v[0], v[1], v[2]}});
                const bool inj = alpha_injective(m, v);
                if (inj != (k_prime_dimension(m, span) == 0)) {
                    detail = "injectivity disagrees with the direct intersection";
                    return false;
                }
                if (inj) ++injective_seen;
            } catch (const input_error&) {
                continue;
            }
        }
        if (injective_seen < 20) {
            detail = "too few injective random instances";
            return false;
        }

        // Random dual pairs keep Lstar away from every line of V.
        for (int trial = 0; trial < 10; ++trial) {
            const int n = 2 + trial % 4;
            const int r = 1 + trial % n;
            if (r >= n) continue;
            const RationalMatrix nmat = testsupport::random_matrix(rng, static_cast<std::size_t>(n),
                                                                   static_cast<std::size_t>(n), 3, 1);
            RationalMatrix mmat = RationalMatrix::identity(static_cast<std::size_t>(n))
                                      .scaled(testsupport::random_nonzero_rational(rng, 3, 1)) +
                                  nmat.scaled(testsupport::random_rational(rng, 3, 1));
            RationalMatrix b1(static_cast<std::size_t>(n - r), static_cast<std::size_t>(n));
            do {
                b1 = testsupport::random_matrix(rng, static_cast<std::size_t>(n - r),
                                                static_cast<std::size_t>(n), 3, 1);
            } while (b1.rank() != static_cast<std::size_t>(n - r));
            const Monad m(n, r,
                          {RationalMatrix::identity(static_cast<std::size_t>(n)), nmat, mmat},
                          std::array<RationalMatrix, 3>{b1, b1 * nmat, b1 * mmat});
            if (lstar_intersection_dimension(m, random_covector(rng)) != 0) {
                detail = "Lstar met a random line at trial " + std::to_string(trial);
                return false;
            }
        }

        // Planted violations: Lstar built to contain hstar (x) v.
        for (int trial = 0; trial < 5; ++trial) {
            const int n = 2 + trial % 4;
            const std::array<Rational, 3> v{Rational(1), testsupport::random_rational(rng, 3, 1),
                                            testsupport::random_rational(rng, 3, 1)};
            RationalMatrix nmat = testsupport::random_matrix(rng, static_cast<std::size_t>(n),
                                                             static_cast<std::size_t>(n), 3, 1);
            RationalMatrix mmat = testsupport::random_matrix(rng, static_cast<std::size_t>(n),
                                                             static_cast<std::size_t>(n), 3, 1);
            for (int j = 0; j < n; ++j) {
                nmat(0, static_cast<std::size_t>(j)) = j == 0 ? v[1] : Rational(0);
                mmat(0, static_cast<std::size_t>(j)) = j == 0 ? v[2] : Rational(0);
            }
            RationalMatrix b1(1, static_cast<std::size_t>(n));
            b1(0, 0) = 1;
            const Monad m(n, n - 1,
                          {RationalMatrix::identity(static_cast<std::size_t>(n)), nmat, mmat},
                          std::array<RationalMatrix, 3>{b1, b1 * nmat, b1 * mmat});
            if (lstar_intersection_dimension(m, v) != 1) {
                detail = "planted Lstar line not detected at trial " + std::to_string(trial);
                return false;
            }
        }
        return true;
    });

    criterion(10, "Euler characteristics, h1 tables and the Gieseker order", [](std::string& detail) {
        for (std::int64_t n = 2; n <= 10; ++n)
            if (euler_characteristic(ChernData(2, 0, n)) != 2 - n) {
                detail = "chi(2, 0, " + std::to_string(n) + ") is off";
                return false;
            }
        for (std::int64_t r = 1; r <= 5; ++r)
            for (std::int64_t c2 = r; c2 <= r + 10; ++c2) {
                const SemistableH1Table t = semistable_h1_table(r, c2);
                if (t.h1[0] != c2 || t.h1[1] != c2 || t.h1[2] != c2 - r) {
                    detail = "h1 table mismatch at rank " + std::to_string(r);
                    return false;
                }
            }
        bool rejected = false;
        try {
            semistable_h1_table(3, 2);
        } catch (const input_error&) {
            rejected = true;
        }
        if (!rejected) {
            detail = "c2 below rank was not rejected";
            return false;
        }

        std::mt19937_64 rng = testsupport::make_rng(1010);
        std::uniform_int_distribution<std::int64_t> rank_d(1, 5), c1_d(-5, 5), c2_d(-10, 10);
        auto draw = [&] { return ChernData(rank_d(rng), c1_d(rng), c2_d(rng)); };
        for (int trial = 0; trial < 200; ++trial) {
            const ChernData a = draw(), b = draw(), c = draw();
            if (gieseker_compare(a, a) != std::strong_ordering::equal) {
                detail = "order is not reflexive";
                return false;
            }
            const auto ab = gieseker_compare(a, b), ba = gieseker_compare(b, a);
            if ((ab == std::strong_ordering::less) != (ba == std::strong_ordering::greater) ||
                (ab == std::strong_ordering::equal) != (ba == std::strong_ordering::equal)) {
                detail = "order is not antisymmetric";
                return false;
            }
            const auto bc = gieseker_compare(b, c);
            if (ab != std::strong_ordering::greater && bc != std::strong_ordering::greater &&
                gieseker_compare(a, c) == std::strong_ordering::greater) {
                detail = "order is not transitive";
                return false;
            }
        }
        return true;
    });

    criterion(11, "every corpus report replays and reruns byte for byte", [](std::string& detail) {
        std::size_t index = 0;
        for (const AnalysisRequest& req : corpus::regression_requests()) {
            const json report = run(req);
            if (run(req).dump() != report.dump()) {
                detail = "request " + std::to_string(index) + " is not deterministic";
                return false;
            }
            if (!replay(report)) {
                detail = "request " + std::to_string(index) + " failed to replay";
                return false;
            }
            ++index;
        }
        return true;
    });

    if (failures == 0) {
        std::cout << "all acceptance criteria hold\n";
        return 0;
    }
    std::cout << failures << " criterion(s) failed\n";
    return 1;
}
