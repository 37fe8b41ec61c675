#pragma once

#include <algorithm>
#include <vector>

#include "fgi/cyclo/rational.hpp"

namespace fgi {

/// Dense integer matrix, row-major.
class IntMatrix {
   public:
    IntMatrix() = default;
    IntMatrix(long rows, long cols) : r_(rows), c_(cols), a_(rows * cols, Integer(0)) {}
    static IntMatrix identity(long n) {
        IntMatrix m(n, n);
        for (long i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
        long r = static_cast<long>(rows.size()), c = r ? static_cast<long>(rows[0].size()) : 0;
        IntMatrix m(r, c);
        for (long i = 0; i < r; ++i) {
            if (static_cast<long>(rows[i].size()) != c) throw MathError("ragged matrix rows");
            for (long j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }
    static IntMatrix from_columns(const std::vector<std::vector<Integer>>& cols, long rows) {
        IntMatrix m(rows, static_cast<long>(cols.size()));
        for (long j = 0; j < m.c_; ++j)
            for (long i = 0; i < rows; ++i) m(i, j) = cols[j].at(i);
        return m;
    }

    long rows() const { return r_; }
    long cols() const { return c_; }
    Integer& operator()(long i, long j) { return a_[i * c_ + j]; }
    const Integer& operator()(long i, long j) const { return a_[i * c_ + j]; }

    std::vector<Integer> column(long j) const {
        std::vector<Integer> v(r_);
        for (long i = 0; i < r_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    std::vector<std::vector<Integer>> columns() const {
        std::vector<std::vector<Integer>> out;
        for (long j = 0; j < c_; ++j) out.push_back(column(j));
        return out;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.c_ != b.r_) throw MathError("matrix shape mismatch");
        IntMatrix m(a.r_, b.c_);
        for (long i = 0; i < a.r_; ++i)
            for (long k = 0; k < a.c_; ++k) {
                if (a(i, k) == 0) continue;
                for (long j = 0; j < b.c_; ++j) m(i, j) += a(i, k) * b(k, j);
            }
        return m;
    }
    friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw MathError("matrix shape mismatch");
        for (size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
        return a;
    }
    friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw MathError("matrix shape mismatch");
        for (size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
        return a;
    }
    std::vector<Integer> operator*(const std::vector<Integer>& v) const {
        if (static_cast<long>(v.size()) != c_) throw MathError("matrix-vector shape mismatch");
        std::vector<Integer> w(r_, Integer(0));
        for (long i = 0; i < r_; ++i)
            for (long j = 0; j < c_; ++j) w[i] += (*this)(i, j) * v[j];
        return w;
    }
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }
    IntMatrix transpose() const {
        IntMatrix m(c_, r_);
        for (long i = 0; i < r_; ++i)
            for (long j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }
    /// Horizontal concatenation.
    IntMatrix hcat(const IntMatrix& b) const {
        if (r_ != b.r_) throw MathError("matrix shape mismatch");
        IntMatrix m(r_, c_ + b.c_);
        for (long i = 0; i < r_; ++i) {
            for (long j = 0; j < c_; ++j) m(i, j) = (*this)(i, j);
            for (long j = 0; j < b.c_; ++j) m(i, c_ + j) = b(i, j);
        }
        return m;
    }

    void swap_rows(long i, long k) {
        for (long j = 0; j < c_; ++j) std::swap((*this)(i, j), (*this)(k, j));
    }
    void swap_cols(long j, long k) {
        for (long i = 0; i < r_; ++i) std::swap((*this)(i, j), (*this)(i, k));
    }
    /// row_i += f * row_k
    void add_row(long i, long k, const Integer& f) {
        for (long j = 0; j < c_; ++j) (*this)(i, j) += f * (*this)(k, j);
    }
    void add_col(long j, long k, const Integer& f) {
        for (long i = 0; i < r_; ++i) (*this)(i, j) += f * (*this)(i, k);
    }
    void negate_row(long i) {
        for (long j = 0; j < c_; ++j) (*this)(i, j) = -(*this)(i, j);
    }
    void negate_col(long j) {
        for (long i = 0; i < r_; ++i) (*this)(i, j) = -(*this)(i, j);
    }

   private:
    long r_ = 0, c_ = 0;
    std::vector<Integer> a_;
};

/// Smith form U*A*V = D with U, V unimodular and D diagonal, d_1 | d_2 | ..., d_i >= 0.
struct SmithForm {
    IntMatrix U, V, D;
    std::vector<Integer> diagonal() const {
        std::vector<Integer> d;
        for (long i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
        return d;
    }
};

inline SmithForm smith_form(const IntMatrix& A) {
    long m = A.rows(), n = A.cols();
    IntMatrix D = A, U = IntMatrix::identity(m), V = IntMatrix::identity(n);
    for (long t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // smallest nonzero entry of the remaining block moves to (t, t)
            long bi = -1, bj = -1;
            for (long i = t; i < m; ++i)
                for (long j = t; j < n; ++j)
                    if (D(i, j) != 0 && (bi < 0 || abs(D(i, j)) < abs(D(bi, bj)))) bi = i, bj = j;
            if (bi < 0) return {U, V, D};
            if (bi != t) D.swap_rows(bi, t), U.swap_rows(bi, t);
            if (bj != t) D.swap_cols(bj, t), V.swap_cols(bj, t);
            bool clean = true;
            for (long i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
                D.add_row(i, t, -q), U.add_row(i, t, -q);
                if (D(i, t) != 0) clean = false;
            }
            for (long j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
                D.add_col(j, t, -q), V.add_col(j, t, -q);
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility of the remaining block
            long bad = -1;
            for (long i = t + 1; i < m && bad < 0; ++i)
                for (long j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            D.add_row(t, bad, 1), U.add_row(t, bad, 1);
        }
        if (D(t, t) < 0) D.negate_row(t), U.negate_row(t);
    }
    return {U, V, D};
}

/// Rational inverse of a square integer matrix: returns (N, d) with A^{-1} = N/d.
inline std::pair<IntMatrix, Integer> rational_inverse(const IntMatrix& A) {
    long n = A.rows();
    if (A.cols() != n) throw MathError("inverse of non-square matrix");
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n, Rational(0)));
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) a[i][j] = A(i, j);
        a[i][n + i] = 1;
    }
    for (long c = 0; c < n; ++c) {
        long p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw MathError("singular matrix");
        std::swap(a[p], a[c]);
        Rational inv = 1 / a[c][c];
        for (long j = c; j < 2 * n; ++j) a[c][j] *= inv;
        for (long r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Rational f = a[r][c];
            for (long j = c; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
        }
    }
    Integer d = 1;
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) d = lcm(d, Integer(a[i][n + j].get_den()));
    IntMatrix N(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            Rational v = a[i][n + j] * d;
            N(i, j) = v.get_num();
        }
    return {N, d};
}

}  // namespace fgi
