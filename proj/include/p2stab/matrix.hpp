#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace p2stab {

// Dense matrix over the exact rationals, row-major.
// Rank, determinant and kernel go through fraction-free (Bareiss) elimination
// on a row-wise integer scaling, which keeps intermediate entries as minors
// of the scaled matrix instead of letting them grow freely.
class RationalMatrix {
  public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_)
            throw input_error("matrix: entry count does not match dimensions");
    }

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const RationalMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0) return false;
        return true;
    }

    RationalMatrix transpose() const {
        RationalMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    RationalMatrix operator*(const RationalMatrix& o) const {
        if (cols_ != o.rows_) throw input_error("matrix: product shape mismatch");
        RationalMatrix p(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rational& a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += a * o(k, j);
            }
        return p;
    }

    std::vector<Rational> apply(const std::vector<Rational>& v) const {
        if (v.size() != cols_) throw input_error("matrix: vector length mismatch");
        std::vector<Rational> out(rows_, Rational(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    RationalMatrix operator+(const RationalMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw input_error("matrix: sum shape mismatch");
        RationalMatrix s = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] += o.data_[i];
        return s;
    }

    RationalMatrix operator-(const RationalMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw input_error("matrix: difference shape mismatch");
        RationalMatrix s = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] -= o.data_[i];
        return s;
    }

    RationalMatrix scaled(const Rational& c) const {
        RationalMatrix s = *this;
        for (auto& x : s.data_) x *= c;
        return s;
    }

    std::vector<Rational> column(std::size_t j) const {
        std::vector<Rational> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    void set_column(std::size_t j, const std::vector<Rational>& v) {
        if (v.size() != rows_) throw input_error("matrix: column length mismatch");
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    // Horizontal concatenation [A | B].
    static RationalMatrix hcat(const RationalMatrix& a, const RationalMatrix& b) {
        if (a.rows() != b.rows()) throw input_error("matrix: hcat row mismatch");
        RationalMatrix m(a.rows(), a.cols() + b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
            for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
        }
        return m;
    }

    // Vertical concatenation [A ; B].
    static RationalMatrix vcat(const RationalMatrix& a, const RationalMatrix& b) {
        if (a.cols() != b.cols()) throw input_error("matrix: vcat column mismatch");
        RationalMatrix m(a.rows() + b.rows(), a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, j) = b(i, j);
        return m;
    }

    std::size_t rank() const { return bareiss_echelon().pivot_cols.size(); }

    Rational det() const {
        if (rows_ != cols_) throw input_error("matrix: determinant of non-square matrix");
        if (rows_ == 0) return 1;
        BareissResult r = bareiss_echelon();
        if (r.pivot_cols.size() < rows_) return 0;
        // Last Bareiss pivot is the determinant of the scaled matrix.
        Rational d(r.last_pivot);
        d *= r.sign;
        return d / Rational(r.scale_product);
    }

    // Basis of { x : A x = 0 }, returned as columns.  Zero columns count: nullity.
    RationalMatrix kernel_basis() const {
        BareissResult r = bareiss_echelon();
        const std::size_t rk = r.pivot_cols.size();
        std::vector<char> is_pivot(cols_, 0);
        for (std::size_t c : r.pivot_cols) is_pivot[c] = 1;
        std::vector<std::size_t> free_cols;
        for (std::size_t c = 0; c < cols_; ++c)
            if (!is_pivot[c]) free_cols.push_back(c);

        RationalMatrix basis(cols_, free_cols.size());
        for (std::size_t fc_i = 0; fc_i < free_cols.size(); ++fc_i) {
            std::vector<Rational> x(cols_, Rational(0));
            x[free_cols[fc_i]] = 1;
            // Echelon rows have strictly increasing pivot columns; solve bottom-up.
            for (std::size_t k = rk; k-- > 0;) {
                const std::size_t pc = r.pivot_cols[k];
                Rational s(0);
                for (std::size_t j = pc + 1; j < cols_; ++j)
                    if (r.echelon[k * cols_ + j] != 0 && x[j] != 0)
                        s += Rational(r.echelon[k * cols_ + j]) * x[j];
                x[pc] = -s / Rational(r.echelon[k * cols_ + pc]);
            }
            basis.set_column(fc_i, x);
        }
        return basis;
    }

    // Reduced row echelon form over the rationals; returns pivot columns.
    std::pair<RationalMatrix, std::vector<std::size_t>> rref() const {
        RationalMatrix m = *this;
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && m(p, c) == 0) ++p;
            if (p == rows_) continue;
            for (std::size_t j = 0; j < cols_; ++j) std::swap(m(r, j), m(p, j));
            const Rational piv = m(r, c);
            for (std::size_t j = c; j < cols_; ++j) m(r, j) /= piv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || m(i, c) == 0) continue;
                const Rational f = m(i, c);
                for (std::size_t j = c; j < cols_; ++j) m(i, j) -= f * m(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return {m, pivots};
    }

    RationalMatrix inverse() const {
        if (rows_ != cols_) throw input_error("matrix: inverse of non-square matrix");
        auto [red, pivots] = hcat(*this, identity(rows_)).rref();
        if (pivots.size() != rows_ || pivots.back() != rows_ - 1)
            throw input_error("matrix: singular, no inverse");
        RationalMatrix inv(rows_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < rows_; ++j) inv(i, j) = red(i, rows_ + j);
        return inv;
    }

    // Solves A x = b exactly; empty optional when inconsistent.
    std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const {
        if (b.size() != rows_) throw input_error("matrix: rhs length mismatch");
        RationalMatrix aug(rows_, cols_ + 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_) = b[i];
        }
        auto [red, pivots] = aug.rref();
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
        std::vector<Rational> x(cols_, Rational(0));
        for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = red(k, cols_);
        return x;
    }

  private:
    struct BareissResult {
        std::vector<Integer> echelon;         // rows_ x cols_, integer entries
        std::vector<std::size_t> pivot_cols;  // strictly increasing
        Integer last_pivot = 1;
        Integer scale_product = 1;            // product of row scalings applied
        int sign = 1;                         // parity of row swaps
    };

    BareissResult bareiss_echelon() const {
        BareissResult res;
        res.echelon.assign(rows_ * cols_, Integer(0));
        // Row-wise clearing of denominators; row operations leave rank and
        // kernel unchanged, the determinant picks up the recorded factor.
        for (std::size_t i = 0; i < rows_; ++i) {
            Integer l = 1;
            for (std::size_t j = 0; j < cols_; ++j)
                l = lcm(l, denominator((*this)(i, j)));
            res.scale_product *= l;
            for (std::size_t j = 0; j < cols_; ++j) {
                const Rational v = (*this)(i, j) * Rational(l);
                res.echelon[i * cols_ + j] = numerator(v);
            }
        }
        auto at = [&](std::size_t i, std::size_t j) -> Integer& {
            return res.echelon[i * cols_ + j];
        };

        Integer prev = 1;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && at(p, c) == 0) ++p;
            if (p == rows_) continue;
            if (p != r) {
                for (std::size_t j = 0; j < cols_; ++j) std::swap(at(r, j), at(p, j));
                res.sign = -res.sign;
            }
            for (std::size_t i = r + 1; i < rows_; ++i) {
                for (std::size_t j = c + 1; j < cols_; ++j) {
                    Integer num = at(r, c) * at(i, j) - at(i, c) * at(r, j);
                    Integer q, rem;
                    divide_qr(num, prev, q, rem);
                    if (rem != 0) throw internal_error("bareiss: inexact division");
                    at(i, j) = std::move(q);
                }
                at(i, c) = 0;
            }
            prev = at(r, c);
            res.pivot_cols.push_back(c);
            ++r;
        }
        res.last_pivot = prev;
        return res;
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

} // namespace p2stab
