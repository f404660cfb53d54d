#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "rational.hpp"

namespace p2stab {

using Exponents = std::array<int, 3>;

// Homogeneous polynomial in three variables over the rationals, stored as a
// sparse exponent -> coefficient map.  The zero polynomial is the empty map
// with a declared degree.  Stored coefficients are never zero.
class HomogeneousPolynomial {
  public:
    explicit HomogeneousPolynomial(int degree = 0) : degree_(degree) {
        if (degree < 0) throw input_error("polynomial: negative degree");
    }

    static HomogeneousPolynomial constant(const Rational& c) {
        HomogeneousPolynomial f(0);
        f.add_term({0, 0, 0}, c);
        return f;
    }

    static HomogeneousPolynomial variable(int var) {
        HomogeneousPolynomial f(1);
        Exponents e{0, 0, 0};
        e.at(var) = 1;
        f.add_term(e, 1);
        return f;
    }

    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Exponents, Rational>& terms() const { return terms_; }

    void add_term(const Exponents& e, const Rational& c) {
        if (e[0] < 0 || e[1] < 0 || e[2] < 0)
            throw input_error("polynomial: negative exponent");
        if (e[0] + e[1] + e[2] != degree_)
            throw input_error("polynomial: term degree does not match declared degree");
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    bool operator==(const HomogeneousPolynomial& o) const {
        return degree_ == o.degree_ && terms_ == o.terms_;
    }

    HomogeneousPolynomial operator-() const {
        HomogeneousPolynomial f(degree_);
        for (const auto& [e, c] : terms_) f.terms_.emplace(e, -c);
        return f;
    }

    HomogeneousPolynomial operator+(const HomogeneousPolynomial& o) const {
        if (degree_ != o.degree_) throw input_error("polynomial: sum degree mismatch");
        HomogeneousPolynomial f = *this;
        for (const auto& [e, c] : o.terms_) f.add_term(e, c);
        return f;
    }

    HomogeneousPolynomial operator-(const HomogeneousPolynomial& o) const {
        if (degree_ != o.degree_) throw input_error("polynomial: difference degree mismatch");
        HomogeneousPolynomial f = *this;
        for (const auto& [e, c] : o.terms_) f.add_term(e, -c);
        return f;
    }

    HomogeneousPolynomial operator*(const HomogeneousPolynomial& o) const {
        HomogeneousPolynomial f(degree_ + o.degree_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_)
                f.add_term({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, c1 * c2);
        return f;
    }

    HomogeneousPolynomial operator*(const Rational& c) const {
        HomogeneousPolynomial f(degree_);
        if (c == 0) return f;
        for (const auto& [e, k] : terms_) f.terms_.emplace(e, k * c);
        return f;
    }

    Rational evaluate(const std::array<Rational, 3>& x) const {
        // Power tables up to the per-variable maxima.
        std::array<std::vector<Rational>, 3> pw;
        for (int v = 0; v < 3; ++v) {
            pw.at(v).assign(static_cast<std::size_t>(degree_in(v)) + 1, Rational(1));
            for (std::size_t k = 1; k < pw.at(v).size(); ++k)
                pw.at(v)[k] = pw.at(v)[k - 1] * x.at(v);
        }
        Rational s(0);
        for (const auto& [e, c] : terms_)
            s += c * pw[0][static_cast<std::size_t>(e[0])] *
                 pw[1][static_cast<std::size_t>(e[1])] * pw[2][static_cast<std::size_t>(e[2])];
        return s;
    }

    // Highest exponent of one variable across all terms.
    int degree_in(int var) const {
        int d = 0;
        for (const auto& [e, c] : terms_)
            if (e.at(var) > d) d = e.at(var);
        return d;
    }

    // Leading term in the deterministic (lexicographic, descending) order.
    std::pair<Exponents, Rational> leading_term() const {
        if (terms_.empty()) throw internal_error("polynomial: leading term of zero");
        auto it = std::prev(terms_.end());
        return {it->first, it->second};
    }

    std::string to_string(const std::array<std::string, 3>& names = {"X", "Y", "Z"}) const {
        if (terms_.empty()) return "0";
        std::string out;
        // Descending lexicographic order reads naturally (X-leading terms first).
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            std::string mono;
            for (int v = 0; v < 3; ++v) {
                if (e.at(v) == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += names.at(v);
                if (e.at(v) > 1) mono += "^" + std::to_string(e.at(v));
            }
            Rational a = c;
            std::string sign = a < 0 ? "-" : "+";
            if (a < 0) a = -a;
            if (out.empty())
                out = (sign == "-" ? "-" : "");
            else
                out += " " + sign + " ";
            if (mono.empty())
                out += p2stab::to_string(a);
            else if (a == 1)
                out += mono;
            else
                out += p2stab::to_string(a) + "*" + mono;
        }
        return out;
    }

  private:
    int degree_;
    std::map<Exponents, Rational> terms_;
};

inline HomogeneousPolynomial operator*(const Rational& c, const HomogeneousPolynomial& f) {
    return f * c;
}

// f composed with the linear map M: every variable x_i is replaced by the
// linear form sum_j M[i][j] x_j, i.e. the result is v |-> f(M v).  With M the
// matrix of a linear map g in the standard basis (columns are images of basis
// vectors) this realizes the pullback f o g, so
//   substitute(f, M1 * M2) == substitute(substitute(f, M1), M2).
// No invertibility is assumed here; the public substitute checks it.
inline HomogeneousPolynomial compose_linear(const HomogeneousPolynomial& f,
                                            const RationalMatrix& m) {
    if (m.rows() != 3 || m.cols() != 3) throw input_error("substitute: matrix must be 3x3");
    std::array<HomogeneousPolynomial, 3> row_form{HomogeneousPolynomial(1),
                                                  HomogeneousPolynomial(1),
                                                  HomogeneousPolynomial(1)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Exponents e{0, 0, 0};
            e.at(j) = 1;
            row_form.at(i).add_term(e, m(i, j));
        }
    // Power tables for the three replacement forms.
    std::array<std::vector<HomogeneousPolynomial>, 3> pw;
    for (int v = 0; v < 3; ++v) {
        pw.at(v).push_back(HomogeneousPolynomial::constant(1));
        const int top = f.degree_in(v);
        for (int k = 1; k <= top; ++k) pw.at(v).push_back(pw.at(v).back() * row_form.at(v));
    }
    HomogeneousPolynomial out(f.degree());
    for (const auto& [e, c] : f.terms()) {
        HomogeneousPolynomial t = pw[0][static_cast<std::size_t>(e[0])] *
                                  pw[1][static_cast<std::size_t>(e[1])] *
                                  pw[2][static_cast<std::size_t>(e[2])];
        out = out + t * c;
    }
    return out;
}

inline HomogeneousPolynomial substitute(const HomogeneousPolynomial& f, const RationalMatrix& m) {
    if (m.rows() != 3 || m.cols() != 3) throw input_error("substitute: matrix must be 3x3");
    if (m.det() == 0) throw input_error("substitute: matrix is singular");
    return compose_linear(f, m);
}

inline HomogeneousPolynomial partial(const HomogeneousPolynomial& f, int var) {
    if (f.degree() == 0) return HomogeneousPolynomial(0);
    HomogeneousPolynomial d(f.degree() - 1);
    for (const auto& [e, c] : f.terms()) {
        if (e.at(var) == 0) continue;
        Exponents ne = e;
        ne.at(var) -= 1;
        d.add_term(ne, c * e.at(var));
    }
    return d;
}

inline std::array<HomogeneousPolynomial, 3> partials(const HomogeneousPolynomial& f) {
    return {partial(f, 0), partial(f, 1), partial(f, 2)};
}

} // namespace p2stab
