#pragma once

#include <string>
#include <vector>

#include "fgi/gring/ideal.hpp"

namespace fgi {

/// Finite Z[G]-module Z^k / (columns of R), with one k x k action matrix per generator of G.
class FiniteGModule {
   public:
    FiniteGModule() = default;
    FiniteGModule(GroupPtr g, IntMatrix relations, std::vector<IntMatrix> action)
        : g_(std::move(g)), R_(std::move(relations)), A_(std::move(action)) {
        validate();
    }

    static FiniteGModule zero(const GroupPtr& g) {
        return FiniteGModule(g, IntMatrix(0, 0), std::vector<IntMatrix>(g->rank(), IntMatrix(0, 0)));
    }
    /// Z/m with trivial action.
    static FiniteGModule cyclic_trivial(const GroupPtr& g, long m) {
        IntMatrix R(1, 1);
        R(0, 0) = m;
        return FiniteGModule(g, R, std::vector<IntMatrix>(g->rank(), IntMatrix::identity(1)));
    }
    /// Z[G]/I for an integral ideal I.
    static FiniteGModule quotient_ring(const IdealLattice& I) {
        if (!I.is_integral()) throw MathError("quotient by a non-integral ideal");
        const auto& g = I.group();
        long n = g->order();
        IntMatrix R = IntMatrix::from_columns(I.basis(), n);
        std::vector<IntMatrix> A;
        for (long j = 0; j < g->rank(); ++j) {
            IntMatrix P(n, n);
            long s = g->generator(j);
            for (long i = 0; i < n; ++i) P(g->mul(s, i), i) = 1;
            A.push_back(P);
        }
        return FiniteGModule(g, R, A);
    }

    const GroupPtr& group() const { return g_; }
    long num_generators() const { return R_.rows(); }
    const IntMatrix& relations() const { return R_; }
    const std::vector<IntMatrix>& action() const { return A_; }

    /// Invariant factors of the underlying abelian group (entries 1 omitted).
    std::vector<Integer> invariants() const {
        std::vector<Integer> out;
        for (auto& d : smith_form(R_).diagonal())
            if (d != 1) out.push_back(d);
        return out;
    }
    Integer order() const {
        Integer n = 1;
        for (auto& d : invariants()) n *= d;
        return n;
    }

    /// Action matrix of an arbitrary group element.
    IntMatrix action_of(long sigma) const {
        long k = num_generators();
        IntMatrix M = IntMatrix::identity(k);
        auto x = g_->coords(sigma);
        for (size_t j = 0; j < x.size(); ++j)
            for (long t = 0; t < x[j]; ++t) M = A_[j] * M;
        return M;
    }
    /// alpha . v for integral alpha.
    std::vector<Integer> apply(const QG& alpha, const std::vector<Integer>& v) const {
        require_same_group(g_, alpha.group());
        if (!is_integral(alpha)) throw MathError("module action by a non-integral group ring element");
        std::vector<Integer> w(num_generators(), Integer(0));
        for (long s = 0; s < g_->order(); ++s) {
            if (alpha[s] == 0) continue;
            auto u = action_of(s) * v;
            Integer c = alpha[s].get_num();
            for (size_t i = 0; i < w.size(); ++i) w[i] += c * u[i];
        }
        return w;
    }
    bool is_zero(const std::vector<Integer>& v) const { return relation_lattice().contains(v); }
    std::vector<Integer> generator_vector(long i) const {
        std::vector<Integer> e(num_generators(), Integer(0));
        e.at(i) = 1;
        return e;
    }

    Lattice relation_lattice() const { return Lattice::from_columns(num_generators(), R_.columns()); }

    /// {alpha in Z[G] : alpha . m = 0 for all m}.
    IdealLattice annihilator() const {
        long n = g_->order(), k = num_generators();
        SmithForm S = smith_form(R_);
        auto d = S.diagonal();
        // conditions sum_sigma a_sigma (U A(sigma) e_i)_j = 0 mod d_j
        std::vector<std::vector<Integer>> cond_rows;  // one per (i, j), length n
        std::vector<Integer> moduli;
        std::vector<IntMatrix> UA;
        for (long s = 0; s < n; ++s) UA.push_back(S.U * action_of(s));
        for (long i = 0; i < k; ++i)
            for (long j = 0; j < k; ++j) {
                if (d[j] == 1) continue;
                std::vector<Integer> row(n);
                for (long s = 0; s < n; ++s) row[s] = UA[s](j, i) % d[j];
                cond_rows.push_back(row);
                moduli.push_back(d[j]);
            }
        long m = static_cast<long>(cond_rows.size());
        std::vector<std::vector<Integer>> cols;
        for (long s = 0; s < n; ++s) {
            std::vector<Integer> c(n + m, Integer(0));
            c[s] = 1;
            for (long r = 0; r < m; ++r) c[n + r] = cond_rows[r][s];
            cols.push_back(c);
        }
        for (long r = 0; r < m; ++r) {
            std::vector<Integer> c(n + m, Integer(0));
            c[n + r] = moduli[r];
            cols.push_back(c);
        }
        Lattice big = Lattice::from_columns(n + m, cols);
        std::vector<std::vector<Integer>> kernel;
        for (auto& c : big.basis()) {
            long piv = n + m - 1;
            while (piv >= 0 && c[piv] == 0) --piv;
            if (piv < n) kernel.emplace_back(c.begin(), c.begin() + n);
        }
        return IdealLattice(g_, QLattice(1, Lattice::from_columns(n, kernel)));
    }

    /// Z[G]-presentation matrix: k rows, columns R and (sigma_j - A_j) e_i.
    std::vector<std::vector<QG>> presentation() const {
        long k = num_generators();
        std::vector<std::vector<QG>> cols;
        for (long c = 0; c < R_.cols(); ++c) {
            std::vector<QG> col;
            for (long i = 0; i < k; ++i) col.push_back(qg_one(g_) * Rational(R_(i, c)));
            cols.push_back(col);
        }
        for (long j = 0; j < g_->rank(); ++j)
            for (long i = 0; i < k; ++i) {
                std::vector<QG> col;
                for (long l = 0; l < k; ++l) {
                    QG x = qg_one(g_) * Rational(-A_[j](l, i));
                    if (l == i) x[g_->generator(j)] += 1;
                    col.push_back(x);
                }
                cols.push_back(col);
            }
        return cols;
    }

    static constexpr long kMaxFittingGenerators = 12;
    static constexpr long kMaxMinors = 20000;

    /// Ideal generated by the maximal minors of the presentation.
    IdealLattice fitting_ideal() const {
        long k = num_generators();
        if (k == 0) return IdealLattice::whole(g_);
        if (k > kMaxFittingGenerators) throw UnsupportedError("Fitting ideal limited to 12 generators");
        auto cols = presentation();
        long c = static_cast<long>(cols.size());
        // count minors
        Integer count = 1;
        for (long i = 0; i < k; ++i) count = count * (c - i) / (i + 1);
        if (count > kMaxMinors) throw UnsupportedError("too many minors for Fitting ideal computation");
        std::vector<QG> minors;
        std::vector<long> pick(k);
        for (long i = 0; i < k; ++i) pick[i] = i;
        for (;;) {
            std::vector<std::vector<QG>> m(k, std::vector<QG>(k));
            for (long r = 0; r < k; ++r)
                for (long s = 0; s < k; ++s) m[r][s] = cols[pick[s]][r];
            QG d = det_qg(m, g_);
            if (!d.is_zero()) minors.push_back(d);
            long i = k - 1;
            while (i >= 0 && pick[i] == c - k + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (long j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
        return IdealLattice::from_generators(g_, minors);
    }

    /// The ell-Sylow submodule with the induced action.
    FiniteGModule ell_part(long ell) const {
        if (!is_prime(ell)) throw MathError("ell_part needs a prime");
        long k = num_generators();
        SmithForm S = smith_form(R_);
        auto d = S.diagonal();
        auto [Uinv, det] = rational_inverse(S.U);
        if (det != 1) throw MathError("internal: non-unimodular transform");
        // generators f_t = (d_t / ell^{v_t}) eps_t in Smith coordinates
        std::vector<long> idx;
        std::vector<Integer> lp, cof;
        for (long t = 0; t < k; ++t) {
            Integer q = d[t], e = 1;
            while (q % ell == 0) q /= ell, e *= ell;
            if (e > 1) idx.push_back(t), lp.push_back(e), cof.push_back(q);
        }
        long m = static_cast<long>(idx.size());
        IntMatrix R(m, m);
        for (long a = 0; a < m; ++a) R(a, a) = lp[a];
        std::vector<IntMatrix> A;
        for (long j = 0; j < g_->rank(); ++j) {
            IntMatrix T = S.U * A_[j] * Uinv;
            IntMatrix B(m, m);
            for (long a = 0; a < m; ++a)
                for (long b = 0; b < m; ++b) {
                    Integer y = T(idx[b], idx[a]) * cof[a];
                    Integer r = y % d[idx[b]];
                    if (r % cof[b] != 0) throw MathError("internal: ell-part not stable");
                    Integer c = (r / cof[b]) % lp[b];
                    if (c < 0) c += lp[b];
                    B(b, a) = c;
                }
            A.push_back(B);
        }
        return FiniteGModule(g_, R, A);
    }

    /// Direct sum of two modules over the same group.
    friend FiniteGModule direct_sum(const FiniteGModule& a, const FiniteGModule& b) {
        require_same_group(a.g_, b.g_);
        long ka = a.num_generators(), kb = b.num_generators();
        IntMatrix R(ka + kb, a.R_.cols() + b.R_.cols());
        for (long i = 0; i < ka; ++i)
            for (long j = 0; j < a.R_.cols(); ++j) R(i, j) = a.R_(i, j);
        for (long i = 0; i < kb; ++i)
            for (long j = 0; j < b.R_.cols(); ++j) R(ka + i, a.R_.cols() + j) = b.R_(i, j);
        std::vector<IntMatrix> A;
        for (long j = 0; j < a.g_->rank(); ++j) {
            IntMatrix M(ka + kb, ka + kb);
            for (long r = 0; r < ka; ++r)
                for (long s = 0; s < ka; ++s) M(r, s) = a.A_[j](r, s);
            for (long r = 0; r < kb; ++r)
                for (long s = 0; s < kb; ++s) M(ka + r, ka + s) = b.A_[j](r, s);
            A.push_back(M);
        }
        return FiniteGModule(a.g_, R, A);
    }

   private:
    void validate() const {
        long k = R_.rows();
        if (static_cast<long>(A_.size()) != g_->rank()) throw MathError("one action matrix per group generator required");
        for (auto& M : A_)
            if (M.rows() != k || M.cols() != k) throw MathError("action matrix has wrong shape");
        if (k == 0) return;
        Lattice rel = relation_lattice();
        if (rel.rank() != k) throw MathError("module is infinite: relations do not have full rank");
        auto in_rel = [&](const IntMatrix& M) {
            for (auto& c : M.columns())
                if (!rel.contains(c)) return false;
            return true;
        };
        for (size_t j = 0; j < A_.size(); ++j) {
            if (!in_rel(A_[j] * R_)) throw MathError("action does not preserve the relations");
            IntMatrix P = IntMatrix::identity(k);
            for (long t = 0; t < g_->factors()[j]; ++t) P = A_[j] * P;
            if (!in_rel(P - IntMatrix::identity(k))) throw MathError("action does not respect the group order");
            for (size_t i = 0; i < j; ++i)
                if (!in_rel(A_[i] * A_[j] - A_[j] * A_[i])) throw MathError("action matrices do not commute");
        }
    }

    GroupPtr g_;
    IntMatrix R_;
    std::vector<IntMatrix> A_;
};

}  // namespace fgi
