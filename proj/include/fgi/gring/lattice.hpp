#pragma once

#include <map>
#include <string>
#include <vector>

#include "fgi/gring/integer_matrix.hpp"

namespace fgi {

/// Integer lattice in Z^n of any rank, kept in canonical column Hermite form:
/// each basis column has a distinct pivot row (its last nonzero entry, positive),
/// columns are sorted by pivot, and in every pivot row the entries of columns with
/// larger pivots lie in [0, pivot).
class Lattice {
   public:
    Lattice() = default;
    explicit Lattice(long dim) : n_(dim) {}
    static Lattice from_columns(long dim, const std::vector<std::vector<Integer>>& cols) {
        Lattice L(dim);
        for (auto& c : cols) L.insert(c);
        L.reduce();
        return L;
    }
    static Lattice full(long dim) {
        Lattice L(dim);
        for (long i = 0; i < dim; ++i) {
            std::vector<Integer> e(dim, Integer(0));
            e[i] = 1;
            L.cols_[i] = e;
        }
        return L;
    }

    long dim() const { return n_; }
    long rank() const { return static_cast<long>(cols_.size()); }
    bool full_rank() const { return rank() == n_; }

    /// Basis columns ordered by pivot row.
    std::vector<std::vector<Integer>> basis() const {
        std::vector<std::vector<Integer>> out;
        for (auto& [p, c] : cols_) out.push_back(c);
        return out;
    }
    std::vector<long> pivots() const {
        std::vector<long> out;
        for (auto& [p, c] : cols_) out.push_back(p);
        return out;
    }
    /// Index in Z^n (full rank only).
    Integer index() const {
        if (!full_rank()) throw MathError("index of a lattice that is not of full rank");
        Integer d = 1;
        for (auto& [p, c] : cols_) d *= c[p];
        return d;
    }

    void add(const std::vector<Integer>& v) {
        insert(v);
        reduce();
    }
    void add_all(const std::vector<std::vector<Integer>>& vs) {
        for (auto& v : vs) insert(v);
        reduce();
    }

    bool contains(std::vector<Integer> v) const {
        if (static_cast<long>(v.size()) != n_) throw MathError("vector dimension mismatch");
        for (long r = n_ - 1; r >= 0; --r) {
            if (v[r] == 0) continue;
            auto it = cols_.find(r);
            if (it == cols_.end()) return false;
            const auto& c = it->second;
            if (v[r] % c[r] != 0) return false;
            Integer q = v[r] / c[r];
            for (long i = 0; i <= r; ++i) v[i] -= q * c[i];
        }
        return true;
    }
    bool contains(const Lattice& o) const {
        for (auto& [p, c] : o.cols_)
            if (!contains(c)) return false;
        return true;
    }

    /// gcd of all entries (0 for the zero lattice).
    Integer content() const {
        Integer g = 0;
        for (auto& [p, c] : cols_)
            for (auto& x : c) g = gcd(g, x);
        return g;
    }
    Lattice scaled(const Integer& k) const {
        Lattice L(n_);
        if (k == 0) return L;
        for (auto& [p, c] : cols_) {
            auto v = c;
            for (auto& x : v) x *= k;
            L.insert(v);
        }
        L.reduce();
        return L;
    }
    Lattice divided_exact(const Integer& k) const {
        Lattice L(n_);
        for (auto& [p, c] : cols_) {
            auto v = c;
            for (auto& x : v) {
                if (x % k != 0) throw MathError("inexact lattice division");
                x /= k;
            }
            L.cols_[p] = v;
        }
        return L;
    }

    friend bool operator==(const Lattice& a, const Lattice& b) { return a.n_ == b.n_ && a.cols_ == b.cols_; }

    IntMatrix matrix() const { return IntMatrix::from_columns(basis(), n_); }

   private:
    void insert(std::vector<Integer> v) {
        if (static_cast<long>(v.size()) != n_) throw MathError("vector dimension mismatch");
        for (long r = n_ - 1; r >= 0; --r) {
            if (v[r] == 0) continue;
            auto it = cols_.find(r);
            if (it == cols_.end()) {
                if (v[r] < 0)
                    for (auto& x : v) x = -x;
                cols_[r] = std::move(v);
                return;
            }
            auto& c = it->second;
            if (v[r] % c[r] == 0) {
                Integer q = v[r] / c[r];
                for (long i = 0; i <= r; ++i) v[i] -= q * c[i];
                continue;
            }
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), c[r].get_mpz_t(), v[r].get_mpz_t());
            Integer a = c[r] / g, b = v[r] / g;
            std::vector<Integer> nc(n_), nv(n_);
            for (long i = 0; i <= r; ++i) {
                nc[i] = s * c[i] + t * v[i];
                nv[i] = a * v[i] - b * c[i];
            }
            for (long i = r + 1; i < n_; ++i) nc[i] = 0, nv[i] = 0;
            if (nc[r] < 0)
                for (auto& x : nc) x = -x;
            c = std::move(nc);
            v = std::move(nv);
        }
    }

    void reduce() {
        // columns with larger pivots are reduced against smaller ones, highest first
        for (auto it = cols_.begin(); it != cols_.end(); ++it) {
            auto& col = it->second;
            for (auto jt = std::make_reverse_iterator(it); jt != cols_.rend(); ++jt) {
                long p = jt->first;
                const auto& piv = jt->second;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), col[p].get_mpz_t(), piv[p].get_mpz_t());
                if (q != 0)
                    for (long i = 0; i <= p; ++i) col[i] -= q * piv[i];
            }
        }
    }

    long n_ = 0;
    std::map<long, std::vector<Integer>> cols_;
};

/// Lattice (1/d) * L in Q^n with L integral and d minimal.
class QLattice {
   public:
    QLattice() = default;
    QLattice(Integer d, Lattice L) : d_(std::move(d)), L_(std::move(L)) { normalize(); }

    static QLattice from_vectors(long dim, const std::vector<std::vector<Rational>>& vs) {
        Integer d = 1;
        for (auto& v : vs)
            for (auto& q : v) d = lcm(d, Integer(q.get_den()));
        std::vector<std::vector<Integer>> cols;
        for (auto& v : vs) {
            if (static_cast<long>(v.size()) != dim) throw MathError("vector dimension mismatch");
            std::vector<Integer> c(dim);
            for (long i = 0; i < dim; ++i) {
                Rational x = v[i] * d;
                c[i] = x.get_num();
            }
            cols.push_back(std::move(c));
        }
        return QLattice(d, Lattice::from_columns(dim, cols));
    }

    const Integer& denominator() const { return d_; }
    const Lattice& numerator() const { return L_; }
    long dim() const { return L_.dim(); }
    long rank() const { return L_.rank(); }

    std::vector<std::vector<Rational>> basis_vectors() const {
        std::vector<std::vector<Rational>> out;
        for (auto& c : L_.basis()) {
            std::vector<Rational> v(c.size());
            for (size_t i = 0; i < c.size(); ++i) {
                v[i] = Rational(c[i], d_);
                v[i].canonicalize();
            }
            out.push_back(std::move(v));
        }
        return out;
    }

    bool contains(const std::vector<Rational>& v) const {
        std::vector<Integer> w(v.size());
        for (size_t i = 0; i < v.size(); ++i) {
            Rational x = v[i] * d_;
            if (x.get_den() != 1) return false;
            w[i] = x.get_num();
        }
        return L_.contains(w);
    }
    bool contains(const QLattice& o) const {
        Integer m = lcm(d_, o.d_);
        return L_.scaled(m / d_).contains(o.L_.scaled(m / o.d_));
    }

    QLattice scaled(const Rational& q) const {
        if (q == 0) return QLattice(1, Lattice(dim()));
        return QLattice(d_ * q.get_den(), L_.scaled(q.get_num()));
    }

    friend QLattice operator+(const QLattice& a, const QLattice& b) {
        if (a.dim() != b.dim()) throw MathError("lattice dimension mismatch");
        Integer m = lcm(a.d_, b.d_);
        Lattice L = a.L_.scaled(m / a.d_);
        L.add_all(b.L_.scaled(m / b.d_).basis());
        return QLattice(m, L);
    }

    /// Intersection of two full-rank lattices via duals: A cap B = (A* + B*)*.
    friend QLattice intersect(const QLattice& a, const QLattice& b) { return (a.dual() + b.dual()).dual(); }

    /// Dual lattice {y : y.x in Z for all x} (full rank only).
    QLattice dual() const {
        if (L_.rank() != L_.dim()) throw MathError("dual of a lattice that is not of full rank");
        // basis B/d; dual basis = d * B^{-T}
        auto [N, den] = rational_inverse(L_.matrix());
        IntMatrix T = N.transpose();
        std::vector<std::vector<Integer>> cols;
        for (long j = 0; j < T.cols(); ++j) {
            auto c = T.column(j);
            for (auto& x : c) x *= d_;
            cols.push_back(c);
        }
        return QLattice(den, Lattice::from_columns(dim(), cols));
    }

    friend bool operator==(const QLattice& a, const QLattice& b) { return a.d_ == b.d_ && a.L_ == b.L_; }

   private:
    void normalize() {
        if (d_ <= 0) throw MathError("lattice denominator must be positive");
        Integer g = gcd(d_, L_.content());
        if (L_.rank() == 0) g = d_;
        if (g > 1) {
            L_ = L_.divided_exact(g);
            d_ /= g;
        }
    }

    Integer d_ = 1;
    Lattice L_;
};

}  // namespace fgi
