#pragma once

#include <chrono>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "io.hpp"

namespace p2stab {

// A parsed batch request: one subcommand, its input document, the normalized
// flag map, and the seed driving any sampled candidate generation.
struct AnalysisRequest {
    std::string command; // curve | hulsbergen | monad | chern
    json input;
    json options = json::object();
    std::uint64_t seed = 0;
    bool timing = false;
};

namespace detail {

inline std::array<Rational, 3> triple_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3)
        throw input_error(std::string("request: ") + what + " must be a [a0, a1, a2] triple");
    return {json_to_rational(j.at(0)), json_to_rational(j.at(1)), json_to_rational(j.at(2))};
}

inline bool option_flag(const json& options, const char* name) {
    return options.contains(name) && options.at(name).is_boolean() && options.at(name).get<bool>();
}

// ---------------------------------------------------------------------------
// curve
// ---------------------------------------------------------------------------

inline json point_analysis_json(const PlaneCurve& curve, const ProjectivePoint& p) {
    const PointInstabilityResult res = check_point_instability(curve, p);
    json a;
    a["point"] = point_to_json(p);
    a["multiplicity"] = res.multiplicity;
    a["verdict"] =
        res.verdict == PointInstabilityResult::Verdict::unstable ? "unstable" : "inconclusive";
    if (!res.note.empty()) a["note"] = res.note;
    if (res.certificate.has_value())
        a["certificate"] = point_certificate_to_json(*res.certificate);
    return a;
}

inline json run_curve(const json& input, const json& options, std::vector<std::string>& warnings) {
    const PlaneCurve curve(polynomial_from_json(input));
    const int n = curve.degree();

    json results;
    results["degree"] = n;
    results["threshold"] = rational_to_json(make_rational(2 * n, 3));

    bool certified_unstable = false;
    if (options.contains("point")) {
        const auto c = triple_from_json(options.at("point"), "point");
        const ProjectivePoint p{{c[0], c[1], c[2]}};
        json a = point_analysis_json(curve, p);
        certified_unstable = a["verdict"] == "unstable";
        results["point_analysis"] = std::move(a);
    } else {
        // No point supplied: scan the rational singular points as candidates.
        const SingularLocus locus = find_rational_singular_points(curve);
        json scan;
        json pts = json::array();
        json analyses = json::array();
        for (const ProjectivePoint& p : locus.points) {
            pts.push_back(point_to_json(p));
            json a = point_analysis_json(curve, p);
            if (a["verdict"] == "unstable") certified_unstable = true;
            analyses.push_back(std::move(a));
        }
        scan["points"] = std::move(pts);
        scan["non_isolated"] = locus.non_isolated;
        scan["analyses"] = std::move(analyses);
        results["singular_scan"] = std::move(scan);
    }

    const bool smooth = is_nonsingular(curve);
    results["nonsingular"] = smooth;
    if (certified_unstable) {
        results["verdict"] = "unstable";
        results["verdict_note"] = "a point of multiplicity above two thirds of the degree "
                                  "destabilizes the curve";
    } else if (smooth && n >= 3) {
        results["verdict"] = "stable";
        results["verdict_note"] = "nonsingular curve of degree at least three";
    } else {
        results["verdict"] = "inconclusive";
        results["verdict_note"] = "no destabilizing point found and the nonsingularity argument "
                                  "does not apply";
        if (smooth && n < 3)
            warnings.push_back("degree below three: nonsingularity alone decides nothing here");
    }
    return results;
}

// ---------------------------------------------------------------------------
// chern
// ---------------------------------------------------------------------------

inline json run_chern(const json& input, std::vector<std::string>& warnings) {
    const ChernData c = chern_from_json(input);
    json results;
    results["chern"] = chern_to_json(c);
    results["euler_characteristic"] = euler_characteristic(c);
    const ReducedHilbertPolynomial p = reduced_hilbert_polynomial(c);
    json rh;
    rh["quadratic"] = rational_to_json(p.quadratic);
    rh["linear"] = rational_to_json(p.linear);
    rh["constant"] = rational_to_json(p.constant);
    results["reduced_hilbert"] = std::move(rh);
    if (c.c1 == 0 && c.c2 >= c.rank) {
        const SemistableH1Table t = semistable_h1_table(c.rank, c.c2);
        json tj;
        tj["rank"] = t.rank;
        tj["c2"] = t.c2;
        tj["h1"] = json::array({t.h1[0], t.h1[1], t.h1[2]});
        tj["h0_vanishes"] = t.h0_vanishes;
        tj["h2_vanishes"] = t.h2_vanishes;
        results["h1_table"] = std::move(tj);
    } else {
        warnings.push_back("h1 table applies to c1 = 0 with c2 >= rank only; skipped");
    }
    return results;
}

// ---------------------------------------------------------------------------
// hulsbergen
// ---------------------------------------------------------------------------

inline bool forms_proportional(const HomogeneousPolynomial& f, const HomogeneousPolynomial& g) {
    if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
    if (f.degree() != g.degree()) return false;
    const auto& [e, c] = *f.terms().begin();
    const Rational other = g.coeff(e);
    if (other == 0) return false;
    return f * other == g * c;
}

inline json run_hulsbergen(const json& input, const json& options,
                           std::vector<std::string>& warnings) {
    const PointConfiguration z = configuration_from_json(input);
    const int n = z.n();

    const bool has_action = option_flag(options, "jump_curve") || options.contains("splitting") ||
                            option_flag(options, "check_unstable") || options.contains("equivariance");
    const bool want_jump = option_flag(options, "jump_curve") || !has_action;
    const bool want_stability = option_flag(options, "check_unstable") || !has_action;

    json results;
    results["size"] = z.points.size();
    results["degree"] = n;
    results["chern"] = chern_to_json(chern_data(z));
    results["coordinate_rank"] = coordinate_rank(z);

    const HomogeneousPolynomial jc = jump_curve(z);
    if (want_jump) {
        json j;
        j["form"] = polynomial_to_json(jc);
        j["degree"] = jc.degree();
        j["nonsingular"] = is_nonsingular(PlaneCurve(jc));
        results["jump_curve"] = std::move(j);
    }

    if (options.contains("splitting")) {
        const auto c = triple_from_json(options.at("splitting"), "line");
        const ProjectiveLine l(c);
        const LineSplitting s = splitting_on_line(z, l);
        json j;
        j["line"] = line_to_json(l);
        j["incident"] = s.incident;
        j["d"] = s.d;
        results["splitting"] = std::move(j);
    }

    if (want_stability) {
        const ConfigStabilityResult st = check_configuration_stability(z);
        json j;
        j["verdict"] =
            st.verdict == ConfigStabilityResult::Verdict::unstable ? "unstable" : "semistable";
        j["max_split"] = st.max_split;
        j["boundary"] = st.boundary;
        if (st.certificate.has_value())
            j["certificate"] = configuration_certificate_to_json(*st.certificate);
        results["stability"] = std::move(j);
        if (st.boundary)
            warnings.push_back("maximal splitting sits exactly at two thirds of the degree");
    }

    if (options.contains("equivariance")) {
        const RationalMatrix g = matrix_from_json(options.at("equivariance"));
        const PointConfiguration moved = transform_configuration(z, g);
        const HomogeneousPolynomial transformed = jump_curve(moved);
        const HomogeneousPolynomial expected = substitute(jc, g.transpose());
        json j;
        j["matrix"] = matrix_to_json(g);
        j["transformed_form"] = polynomial_to_json(transformed);
        j["holds"] = forms_proportional(transformed, expected);
        results["equivariance"] = std::move(j);
    }
    return results;
}

// ---------------------------------------------------------------------------
// monad
// ---------------------------------------------------------------------------

inline json run_monad(const json& input, const json& options, std::uint64_t seed,
                      std::vector<std::string>& warnings) {
    const Monad m = monad_from_json(input);

    const bool has_action = option_flag(options, "check_condition") ||
                            option_flag(options, "jump_divisor") || options.contains("phi") ||
                            options.contains("vprime") || option_flag(options, "validate_lemmas");
    const bool want_condition = option_flag(options, "check_condition") || !has_action;
    const bool want_divisor = option_flag(options, "jump_divisor") || !has_action;

    json results;
    results["n"] = m.n;
    results["r"] = m.r;
    results["chern"] = chern_to_json(chern_data(m));

    if (want_condition) {
        // Construction already enforces the rank and composition conditions;
        // reaching this point means they hold.
        json j;
        j["valid"] = true;
        j["message"] = m.r < m.n ? "spanning rank and composition conditions hold"
                                 : "spanning rank condition holds; no B side at full rank";
        results["condition"] = std::move(j);
    }

    if (want_divisor) {
        const JumpDivisor jd = jump_divisor(m);
        json j;
        j["form"] = polynomial_to_json(jd.form);
        j["degree"] = jd.degenerate ? 0 : jd.form.degree();
        j["degenerate"] = jd.degenerate;
        results["jump_divisor"] = std::move(j);
        if (jd.degenerate)
            warnings.push_back("the pencil determinant vanishes identically; every line jumps");
    }

    if (options.contains("phi")) {
        const auto l = triple_from_json(options.at("phi"), "line");
        const RationalMatrix p = phi(m, l);
        json j;
        j["line"] = json::array(
            {rational_to_json(l[0]), rational_to_json(l[1]), rational_to_json(l[2])});
        j["matrix"] = matrix_to_json(p);
        j["rank"] = p.rank();
        j["splitting_count"] = splitting_count_on_line(m, l);
        results["phi"] = std::move(j);
    }

    if (options.contains("vprime")) {
        const json& vp = options.at("vprime");
        Subspace vprime(3);
        if (vp.is_array()) {
            const auto l = triple_from_json(vp, "vprime");
            vprime = annihilator_plane(l);
        } else if (vp.is_object()) {
            const RationalMatrix basis = matrix_from_json(vp);
            if (basis.rows() != 3)
                throw input_error("request: a V' basis matrix must have three rows");
            vprime = Subspace::from_columns(basis);
        } else {
            throw input_error("request: vprime must be a covector triple or a basis matrix");
        }
        const SubspaceInstabilityResult res = check_subspace_instability(m, vprime);
        json j;
        j["vprime"] = matrix_to_json(vprime.basis());
        j["dim_vprime"] = res.dim_vprime;
        j["dim_kprime"] = res.dim_kprime;
        j["verdict"] = res.verdict == SubspaceInstabilityResult::Verdict::unstable
                           ? "unstable"
                           : "inconclusive";
        j["lemma_violation"] = res.lemma_violation;
        j["chain"] = res.chain;
        if (res.dim_vprime == 2)
            j["mu_adapted"] = mu_pair(m, adapted_subgroup(m, vprime), Polarization(1, 0));
        results["instability"] = std::move(j);
        if (res.lemma_violation)
            warnings.push_back("a coordinate direction meets K nontrivially; the input is outside "
                               "the expected structure theory");
    }

    if (option_flag(options, "validate_lemmas")) {
        // Fixed coordinate directions plus seeded samples.
        std::vector<std::array<Rational, 3>> samples = {{Rational(1), Rational(0), Rational(0)},
                                                        {Rational(0), Rational(1), Rational(0)},
                                                        {Rational(0), Rational(0), Rational(1)}};
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<long long> d(-5, 5);
        while (samples.size() < 15) {
            std::array<Rational, 3> v{Rational(d(rng)), Rational(d(rng)), Rational(d(rng))};
            if (v[0] == 0 && v[1] == 0 && v[2] == 0) continue;
            samples.push_back(std::move(v));
        }
        json j;
        json checks = json::array();
        bool all_consistent = true;
        bool any_violation = false;
        for (const auto& v : samples) {
            const Subspace span = Subspace::from_vectors(3, {{v[0], v[1], v[2]}});
            const std::size_t k1 = k_prime_dimension(m, span);
            const bool inj = alpha_injective(m, v);
            all_consistent = all_consistent && (inj == (k1 == 0));
            any_violation = any_violation || k1 > 0;
            json e;
            e["v"] = json::array(
                {rational_to_json(v[0]), rational_to_json(v[1]), rational_to_json(v[2])});
            e["alpha_injective"] = inj;
            e["dim_k_meet_line"] = k1;
            if (m.B.has_value()) e["lstar_meet_line"] = lstar_intersection_dimension(m, v);
            checks.push_back(std::move(e));
        }
        j["samples"] = samples.size();
        j["alpha_consistent"] = all_consistent;
        j["any_line_meets_k"] = any_violation;
        j["checks"] = std::move(checks);
        results["lemma_validation"] = std::move(j);
        if (any_violation)
            warnings.push_back("some line of V meets K; instability bookkeeping for such input "
                               "is not covered by the structure lemmas");
    }
    return results;
}

} // namespace detail

// Dispatch a request and wrap the results in the report envelope.
// Deterministic: fixed input, options and seed give byte-identical reports
// (timing is reported as zero unless explicitly requested).
inline json run(const AnalysisRequest& req) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::string> warnings;

    json results;
    if (req.command == "curve")
        results = detail::run_curve(req.input, req.options, warnings);
    else if (req.command == "chern")
        results = detail::run_chern(req.input, warnings);
    else if (req.command == "hulsbergen")
        results = detail::run_hulsbergen(req.input, req.options, warnings);
    else if (req.command == "monad")
        results = detail::run_monad(req.input, req.options, req.seed, warnings);
    else
        throw input_error("request: unknown command '" + req.command + "'");

    json report;
    json tool;
    tool["name"] = tool_name;
    tool["version"] = tool_version;
    report["tool"] = std::move(tool);
    report["command"] = req.command;
    json request_echo;
    request_echo["command"] = req.command;
    request_echo["input"] = req.input;
    request_echo["options"] = req.options;
    request_echo["seed"] = req.seed;
    report["request"] = std::move(request_echo);
    report["input_hash"] = input_hash(req.input);
    report["seed"] = req.seed;
    report["results"] = std::move(results);
    report["warnings"] = warnings;
    std::int64_t ms = 0;
    if (req.timing)
        ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now() - start)
                 .count();
    report["timing_ms"] = ms;
    return report;
}

// Re-executes everything a report claims and compares: the echoed input must
// match its hash, recomputed results must agree with the reported ones, and
// every embedded certificate must verify against the input on its own.
inline bool replay(const json& report, std::vector<std::string>* warnings_out = nullptr) {
    std::vector<std::string> local;
    std::vector<std::string>& warnings = warnings_out ? *warnings_out : local;

    for (const char* k : {"tool", "command", "request", "results"})
        if (!report.contains(k))
            throw input_error(std::string("replay: report is missing \"") + k + "\"");
    const json& tool = report.at("tool");
    if (!tool.contains("name") || tool.at("name") != tool_name ||
        !tool.contains("version") || tool.at("version") != tool_version)
        warnings.push_back("replay: report was produced by a different tool version");

    const json& echo = report.at("request");
    for (const char* k : {"command", "input", "options", "seed"})
        if (!echo.contains(k))
            throw input_error(std::string("replay: request echo is missing \"") + k + "\"");

    AnalysisRequest req;
    req.command = echo.at("command").get<std::string>();
    req.input = echo.at("input");
    req.options = echo.at("options");
    req.seed = echo.at("seed").get<std::uint64_t>();
    req.timing = false;

    if (report.contains("input_hash") && report.at("input_hash") != input_hash(req.input))
        return false;
    if (report.at("command") != req.command) return false;

    const json fresh = run(req);
    if (fresh.at("results") != report.at("results")) return false;

    // Independent certificate checks on the reported data.
    const json& results = report.at("results");
    if (req.command == "curve") {
        const PlaneCurve curve(polynomial_from_json(req.input));
        std::vector<const json*> analyses;
        if (results.contains("point_analysis")) analyses.push_back(&results.at("point_analysis"));
        if (results.contains("singular_scan"))
            for (const json& a : results.at("singular_scan").at("analyses"))
                analyses.push_back(&a);
        for (const json* a : analyses) {
            if (!a->contains("certificate")) continue;
            const PointInstabilityCertificate cert =
                point_certificate_from_json(a->at("certificate"));
            if (!verify_point_certificate(curve, cert)) return false;
            if (cert.mu >= 0) return false;
        }
    } else if (req.command == "hulsbergen") {
        if (results.contains("stability") && results.at("stability").contains("certificate")) {
            const PointConfiguration z = configuration_from_json(req.input);
            const ConfigInstabilityCertificate cert =
                configuration_certificate_from_json(results.at("stability").at("certificate"));
            if (!verify_configuration_certificate(z, cert)) return false;
        }
    } else if (req.command == "monad") {
        if (results.contains("instability")) {
            const json& inst = results.at("instability");
            const bool unstable = inst.at("verdict") == "unstable";
            const std::size_t kp = inst.at("dim_kprime").get<std::size_t>();
            const std::size_t dv = inst.at("dim_vprime").get<std::size_t>();
            const Monad m = monad_from_json(req.input);
            if (dv == 1 && unstable) return false;
            if (dv == 2 &&
                unstable != (3 * kp > 2 * static_cast<std::size_t>(m.n)))
                return false;
            if (inst.contains("mu_adapted")) {
                const long long mu = inst.at("mu_adapted").get<long long>();
                if (mu != 2LL * m.n - 3LL * static_cast<long long>(kp)) return false;
                if (unstable != (mu < 0)) return false;
            }
        }
    }
    return true;
}

} // namespace p2stab
