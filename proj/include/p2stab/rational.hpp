#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "errors.hpp"

namespace p2stab {

using Integer  = boost::multiprecision::cpp_int;
// Canonical form is maintained by the type itself: reduced, denominator > 0.
using Rational = boost::multiprecision::cpp_rational;

// Safe two-argument construction.  cpp_rational's (num, den) constructor
// aborts on a negative denominator, so normalize through a division.
inline Rational make_rational(Integer num, Integer den) {
    if (den == 0) throw input_error("rational: zero denominator");
    return Rational(std::move(num)) / Rational(std::move(den));
}

inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// Parses "a" or "a/b" with optional sign.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        return make_rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw input_error("rational: cannot parse '" + s + "'");
    }
}

} // namespace p2stab
