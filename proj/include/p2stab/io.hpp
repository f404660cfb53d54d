#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "curves.hpp"
#include "hulsbergen.hpp"
#include "monad.hpp"
#include "sheaves.hpp"

namespace p2stab {

// Insertion-ordered JSON keeps report serialization byte-stable.
using json = nlohmann::ordered_json;

inline constexpr const char* tool_name = "p2stab";
inline constexpr const char* tool_version = "1.0.0";

// ---------------------------------------------------------------------------
// Integers and rationals.  Exact values only: floats are rejected, and
// integers that do not fit in 64 bits travel as decimal strings.
// ---------------------------------------------------------------------------

inline json integer_to_json(const Integer& v) {
    static const Integer lo(std::numeric_limits<std::int64_t>::min());
    static const Integer hi(std::numeric_limits<std::int64_t>::max());
    if (v >= lo && v <= hi) return v.convert_to<std::int64_t>();
    return v.str();
}

inline Integer json_to_integer(const json& j) {
    if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    if (j.is_string()) {
        try {
            return Integer(j.get<std::string>());
        } catch (const std::exception&) {
            throw input_error("json: malformed integer string '" + j.get<std::string>() + "'");
        }
    }
    throw input_error("json: expected an integer (number or decimal string), got " +
                      std::string(j.type_name()));
}

inline json rational_to_json(const Rational& r) {
    json j;
    j["num"] = integer_to_json(numerator(r));
    j["den"] = integer_to_json(denominator(r));
    return j;
}

// Accepts a bare integer, an "a/b" string, {"num","den"} or a [num, den] pair.
inline Rational json_to_rational(const json& j) {
    if (j.is_number()) return Rational(json_to_integer(j));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_object()) {
        if (!j.contains("num") || !j.contains("den"))
            throw input_error("json: rational object needs \"num\" and \"den\"");
        return make_rational(json_to_integer(j.at("num")), json_to_integer(j.at("den")));
    }
    if (j.is_array()) {
        if (j.size() != 2) throw input_error("json: rational array must be [num, den]");
        return make_rational(json_to_integer(j.at(0)), json_to_integer(j.at(1)));
    }
    throw input_error("json: expected a rational, got " + std::string(j.type_name()));
}

// ---------------------------------------------------------------------------
// Polynomials, matrices, points.
// ---------------------------------------------------------------------------

inline json polynomial_to_json(const HomogeneousPolynomial& f) {
    json terms = json::array();
    for (const auto& [e, c] : f.terms()) {
        json t;
        t["a"] = e[0];
        t["b"] = e[1];
        t["c"] = e[2];
        t["num"] = integer_to_json(numerator(c));
        t["den"] = integer_to_json(denominator(c));
        terms.push_back(std::move(t));
    }
    json j;
    j["degree"] = f.degree();
    j["terms"] = std::move(terms);
    return j;
}

inline HomogeneousPolynomial polynomial_from_json(const json& j) {
    if (!j.is_object() || !j.contains("degree") || !j.contains("terms"))
        throw input_error("json: polynomial needs \"degree\" and \"terms\"");
    const Integer deg = json_to_integer(j.at("degree"));
    if (deg < 0 || deg > 1000) throw input_error("json: unreasonable polynomial degree");
    HomogeneousPolynomial f(deg.convert_to<int>());
    if (!j.at("terms").is_array()) throw input_error("json: \"terms\" must be an array");
    for (const json& t : j.at("terms")) {
        if (!t.is_object()) throw input_error("json: each term must be an object");
        for (const char* k : {"a", "b", "c", "num"})
            if (!t.contains(k)) throw input_error(std::string("json: term needs \"") + k + "\"");
        Exponents e{json_to_integer(t.at("a")).convert_to<int>(),
                    json_to_integer(t.at("b")).convert_to<int>(),
                    json_to_integer(t.at("c")).convert_to<int>()};
        const Rational coeff = t.contains("den")
                                   ? make_rational(json_to_integer(t.at("num")),
                                                   json_to_integer(t.at("den")))
                                   : Rational(json_to_integer(t.at("num")));
        f.add_term(e, coeff);
    }
    return f;
}

inline json matrix_to_json(const RationalMatrix& m) {
    json entries = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k) entries.push_back(rational_to_json(m(i, k)));
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["entries"] = std::move(entries);
    return j;
}

inline RationalMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw input_error("json: matrix needs \"rows\", \"cols\" and \"entries\"");
    const Integer rows = json_to_integer(j.at("rows"));
    const Integer cols = json_to_integer(j.at("cols"));
    if (rows < 0 || cols < 0 || rows > 512 || cols > 512)
        throw input_error("json: unreasonable matrix dimensions");
    const std::size_t r = rows.convert_to<std::size_t>(), c = cols.convert_to<std::size_t>();
    if (!j.at("entries").is_array() || j.at("entries").size() != r * c)
        throw input_error("json: matrix entry count does not match dimensions");
    std::vector<Rational> entries;
    entries.reserve(r * c);
    for (const json& e : j.at("entries")) entries.push_back(json_to_rational(e));
    return RationalMatrix(r, c, std::move(entries));
}

inline json point_to_json(const ProjectivePoint& p) {
    json j;
    const char* names[3] = {"x", "y", "z"};
    for (std::size_t k = 0; k < 3; ++k) {
        json pair = json::array();
        pair.push_back(integer_to_json(numerator(p.coords[k])));
        pair.push_back(integer_to_json(denominator(p.coords[k])));
        j[names[k]] = std::move(pair);
    }
    return j;
}

inline ProjectivePoint point_from_json(const json& j) {
    if (!j.is_object() || !j.contains("x") || !j.contains("y") || !j.contains("z"))
        throw input_error("json: point needs \"x\", \"y\" and \"z\"");
    return ProjectivePoint{
        {json_to_rational(j.at("x")), json_to_rational(j.at("y")), json_to_rational(j.at("z"))}};
}

// ---------------------------------------------------------------------------
// Point configurations.
// ---------------------------------------------------------------------------

inline json configuration_to_json(const PointConfiguration& z) {
    json pts = json::array();
    for (const ProjectivePoint& p : z.points) {
        json triple = json::array();
        for (std::size_t k = 0; k < 3; ++k) triple.push_back(rational_to_json(p.coords[k]));
        pts.push_back(std::move(triple));
    }
    json coeffs = json::array();
    for (const Rational& c : z.coefficients) {
        json pair = json::array();
        pair.push_back(integer_to_json(numerator(c)));
        pair.push_back(integer_to_json(denominator(c)));
        coeffs.push_back(std::move(pair));
    }
    json j;
    j["points"] = std::move(pts);
    j["coefficients"] = std::move(coeffs);
    return j;
}

inline PointConfiguration configuration_from_json(const json& j) {
    if (!j.is_object() || !j.contains("points") || !j.contains("coefficients"))
        throw input_error("json: configuration needs \"points\" and \"coefficients\"");
    if (!j.at("points").is_array() || !j.at("coefficients").is_array())
        throw input_error("json: \"points\" and \"coefficients\" must be arrays");
    std::vector<ProjectivePoint> points;
    for (const json& p : j.at("points")) {
        if (!p.is_array() || p.size() != 3)
            throw input_error("json: each point must be a [x, y, z] triple");
        points.push_back(ProjectivePoint{
            {json_to_rational(p.at(0)), json_to_rational(p.at(1)), json_to_rational(p.at(2))}});
    }
    std::vector<Rational> coefficients;
    for (const json& c : j.at("coefficients")) coefficients.push_back(json_to_rational(c));
    return PointConfiguration{std::move(points), std::move(coefficients)};
}

// ---------------------------------------------------------------------------
// Monads.
// ---------------------------------------------------------------------------

inline json monad_to_json(const Monad& m) {
    json j;
    j["n"] = m.n;
    j["r"] = m.r;
    json a = json::array();
    for (const RationalMatrix& mat : m.A) a.push_back(matrix_to_json(mat));
    j["A"] = std::move(a);
    if (m.B.has_value()) {
        json b = json::array();
        for (const RationalMatrix& mat : *m.B) b.push_back(matrix_to_json(mat));
        j["B"] = std::move(b);
    }
    return j;
}

inline Monad monad_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("r") || !j.contains("A"))
        throw input_error("json: monad needs \"n\", \"r\" and \"A\"");
    const int n = json_to_integer(j.at("n")).convert_to<int>();
    const int r = json_to_integer(j.at("r")).convert_to<int>();
    if (!j.at("A").is_array() || j.at("A").size() != 3)
        throw input_error("json: \"A\" must hold exactly three matrices");
    std::array<RationalMatrix, 3> a{matrix_from_json(j.at("A").at(0)),
                                    matrix_from_json(j.at("A").at(1)),
                                    matrix_from_json(j.at("A").at(2))};
    std::optional<std::array<RationalMatrix, 3>> b;
    if (j.contains("B")) {
        if (!j.at("B").is_array() || j.at("B").size() != 3)
            throw input_error("json: \"B\" must hold exactly three matrices");
        b = std::array<RationalMatrix, 3>{matrix_from_json(j.at("B").at(0)),
                                          matrix_from_json(j.at("B").at(1)),
                                          matrix_from_json(j.at("B").at(2))};
    }
    return Monad(n, r, std::move(a), std::move(b));
}

// ---------------------------------------------------------------------------
// Chern data.
// ---------------------------------------------------------------------------

inline json chern_to_json(const ChernData& c) {
    json j;
    j["rank"] = c.rank;
    j["c1"] = c.c1;
    j["c2"] = c.c2;
    return j;
}

inline ChernData chern_from_json(const json& j) {
    if (!j.is_object()) throw input_error("json: chern data must be an object");
    const char* rk = j.contains("rank") ? "rank" : "r";
    for (const char* k : {rk, "c1", "c2"})
        if (!j.contains(k)) throw input_error(std::string("json: chern data needs \"") + k + "\"");
    return ChernData(json_to_integer(j.at(rk)).convert_to<std::int64_t>(),
                     json_to_integer(j.at("c1")).convert_to<std::int64_t>(),
                     json_to_integer(j.at("c2")).convert_to<std::int64_t>());
}

// ---------------------------------------------------------------------------
// Certificates.
// ---------------------------------------------------------------------------

inline json point_certificate_to_json(const PointInstabilityCertificate& c) {
    json j;
    j["point"] = point_to_json(c.point);
    j["degree"] = c.degree;
    j["multiplicity"] = c.multiplicity;
    j["frame"] = matrix_to_json(c.frame);
    j["weights"] = json::array({c.weights.w[0], c.weights.w[1], c.weights.w[2]});
    j["mu"] = c.mu;
    return j;
}

inline PointInstabilityCertificate point_certificate_from_json(const json& j) {
    for (const char* k : {"point", "degree", "multiplicity", "frame", "weights", "mu"})
        if (!j.contains(k))
            throw input_error(std::string("json: point certificate needs \"") + k + "\"");
    if (!j.at("weights").is_array() || j.at("weights").size() != 3)
        throw input_error("json: certificate weights must be a triple");
    return PointInstabilityCertificate{
        point_from_json(j.at("point")),
        json_to_integer(j.at("degree")).convert_to<int>(),
        json_to_integer(j.at("multiplicity")).convert_to<int>(),
        matrix_from_json(j.at("frame")),
        DiagonalOnePS{{json_to_integer(j.at("weights").at(0)).convert_to<long long>(),
                       json_to_integer(j.at("weights").at(1)).convert_to<long long>(),
                       json_to_integer(j.at("weights").at(2)).convert_to<long long>()}},
        json_to_integer(j.at("mu")).convert_to<long long>()};
}

inline json line_to_json(const ProjectiveLine& l) {
    json j = json::array();
    for (std::size_t k = 0; k < 3; ++k) j.push_back(rational_to_json(l.coeffs[k]));
    return j;
}

inline ProjectiveLine line_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3)
        throw input_error("json: line must be a [a0, a1, a2] triple");
    return ProjectiveLine{
        {json_to_rational(j.at(0)), json_to_rational(j.at(1)), json_to_rational(j.at(2))}};
}

inline json configuration_certificate_to_json(const ConfigInstabilityCertificate& c) {
    json j;
    j["line"] = line_to_json(c.line);
    j["incident"] = c.incident;
    j["d"] = c.d;
    j["degree"] = c.degree;
    return j;
}

inline ConfigInstabilityCertificate configuration_certificate_from_json(const json& j) {
    for (const char* k : {"line", "incident", "d", "degree"})
        if (!j.contains(k))
            throw input_error(std::string("json: configuration certificate needs \"") + k + "\"");
    ConfigInstabilityCertificate c{line_from_json(j.at("line")),
                                   {},
                                   json_to_integer(j.at("d")).convert_to<int>(),
                                   json_to_integer(j.at("degree")).convert_to<int>()};
    for (const json& idx : j.at("incident"))
        c.incident.push_back(json_to_integer(idx).convert_to<std::size_t>());
    return c;
}

// ---------------------------------------------------------------------------
// Input hashing: FNV-1a over the canonical dump.
// ---------------------------------------------------------------------------

inline std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int k = 15; k >= 0; --k) {
        out[static_cast<std::size_t>(k)] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

inline std::string input_hash(const json& input) { return "fnv1a:" + fnv1a_hex(input.dump()); }

} // namespace p2stab
