#pragma once

#include <vector>

#include "fgi/gring/module.hpp"
#include "fgi/units/unit_lattice.hpp"

namespace fgi {

namespace detail {

/// Solve the square system M x = b by Gaussian elimination with partial pivoting.
inline std::vector<Real> solve_real(std::vector<std::vector<Real>> M, std::vector<Real> b, int prec) {
    long n = static_cast<long>(M.size());
    Real tiny = Real::pow2(-prec / 2, prec);
    for (long c = 0; c < n; ++c) {
        long piv = c;
        for (long r = c + 1; r < n; ++r)
            if (abs(M[r][c]) > abs(M[piv][c])) piv = r;
        if (abs(M[piv][c]) < tiny) throw MathError("unit log vectors are linearly dependent");
        std::swap(M[piv], M[c]);
        std::swap(b[piv], b[c]);
        for (long r = c + 1; r < n; ++r) {
            Real t = M[r][c] / M[c][c];
            for (long k = c; k < n; ++k) M[r][k] -= t * M[c][k];
            b[r] -= t * b[c];
        }
    }
    std::vector<Real> x(n, Real(prec));
    for (long c = n - 1; c >= 0; --c) {
        Real s = b[c];
        for (long k = c + 1; k < n; ++k) s -= M[c][k] * x[k];
        x[c] = s / M[c][c];
    }
    return x;
}

}  // namespace detail

/// Coordinates of S-units in a unit lattice U: numeric solve, rounding, exact confirmation.
class UnitCoordinates {
   public:
    /// Rounding is accepted only when every coordinate is within 2^-16 of an integer.
    static constexpr int kRoundingBits = 16;

    UnitCoordinates(const UnitLattice& U, const PrecisionContext& ctx) : U_(U), ctx_(ctx) {
        ctx.validate();
        long r = static_cast<long>(U.gens.size());
        if (r != U.expected_rank())
            throw MathError("unit lattice has " + std::to_string(r) + " generators, expected rank " +
                            std::to_string(U.expected_rank()));
        int prec = ctx.working_bits();
        for (auto& u : U.gens) logs_.push_back(regulator_vector(u, U.places, ctx));
        gram_.assign(r, std::vector<Real>(r, Real(prec)));
        for (long i = 0; i < r; ++i)
            for (long j = 0; j < r; ++j) gram_[i][j] = dot(logs_[i], logs_[j]);
        // a singular Gram matrix means dependent generators
        if (r > 0) detail::solve_real(gram_, std::vector<Real>(r, Real(prec)), prec);
        for (long k = 0; k < U.torsion_order; ++k) torsion_powers_.push_back(U.torsion.pow(k));
    }

    const UnitLattice& lattice() const { return U_; }

    /// Numeric coordinates of x against the free generators (not rounded).
    std::vector<Real> numeric(const SUnit& x) const {
        auto lx = regulator_vector(x, U_.places, ctx_);
        std::vector<Real> rhs;
        for (auto& l : logs_) rhs.push_back(dot(l, lx));
        if (rhs.empty()) return {};
        return detail::solve_real(gram_, rhs, ctx_.working_bits());
    }

    /// (k, c_1, ..., c_r) with x = t^k prod u_i^{c_i}, verified exactly.
    std::vector<Integer> coords(const SUnit& x) const {
        auto c = numeric(x);
        std::vector<Integer> out{Integer(0)};
        SUnit y = x;
        Real thr = Real::pow2(-kRoundingBits, ctx_.working_bits());
        for (size_t i = 0; i < c.size(); ++i) {
            Integer z = c[i].round_to_integer();
            if (abs(c[i] - Real(z, ctx_.working_bits())) > thr)
                throw PrecisionError("unit coordinate " + c[i].to_string(12) + " is not near an integer; raise --bits");
            long ci = z.get_si();
            out.push_back(z);
            if (ci) y = y * U_.gens[i].pow(-ci);
        }
        out[0] = torsion_exponent(y);
        return out;
    }

    /// k with y = t^k; throws if y is not in the torsion subgroup of U.
    long torsion_exponent(const SUnit& y) const {
        if (y.is_word() && y.symbols().empty()) {
            for (long k = 0; k < U_.torsion_order; ++k) {
                const auto& t = torsion_powers_[k];
                if (t.is_word() && t.symbols().empty() && t.sign_exponent() == y.sign_exponent() &&
                    t.zeta_exponent() == y.zeta_exponent())
                    return k;
            }
            throw MathError("exact verification failed: residual " + y.to_string() + " is not in the torsion of U");
        }
        auto [n, d] = y.expand_fraction();
        for (long k = 0; k < U_.torsion_order; ++k)
            if (n == torsion_powers_[k].expand() * d) return k;
        throw MathError("exact verification failed: residual " + y.to_string() + " is not a root of unity in U");
    }

   private:
    static Real dot(const std::vector<Real>& a, const std::vector<Real>& b) {
        Real s(a.empty() ? 64 : a[0].prec());
        for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    }

    const UnitLattice& U_;
    PrecisionContext ctx_;
    std::vector<std::vector<Real>> logs_;
    std::vector<std::vector<Real>> gram_;
    std::vector<SUnit> torsion_powers_;
};

/// All elements of E listed as generators: its torsion generator (if nontrivial) and E.gens.
inline std::vector<SUnit> generator_list(const UnitLattice& E) {
    std::vector<SUnit> out;
    if (E.torsion_order > 1) out.push_back(E.torsion);
    for (auto& g : E.gens) out.push_back(g);
    return out;
}

/// U/E as a finite Z[G]-module on the generators (t, u_1, ..., u_r) of U.
inline FiniteGModule quotient_module(const UnitLattice& U, const UnitLattice& E, const PrecisionContext& ctx) {
    if (U.conductor() != E.conductor() || !(*U.field().group() == *E.field().group()))
        throw MathError("quotient_module: U and E live in different fields");
    const auto& g = U.field().group();
    UnitCoordinates C(U, ctx);
    long k = 1 + static_cast<long>(U.gens.size());
    std::vector<std::vector<Integer>> rel;
    std::vector<Integer> tor(k, Integer(0));
    tor[0] = U.torsion_order;
    rel.push_back(tor);
    for (auto& x : generator_list(E)) rel.push_back(C.coords(x));
    std::vector<IntMatrix> act;
    for (long j = 0; j < g->rank(); ++j) {
        long a = g->label(g->generator(j));
        std::vector<std::vector<Integer>> cols{C.coords(U.torsion.galois(a))};
        for (auto& u : U.gens) cols.push_back(C.coords(u.galois(a)));
        act.push_back(IntMatrix::from_columns(cols, k));
    }
    IntMatrix R = IntMatrix::from_columns(rel, k);
    if (Lattice::from_columns(k, R.columns()).rank() < k) throw MathError("E has infinite index in U");
    return FiniteGModule(g, R, act);
}

}  // namespace fgi
