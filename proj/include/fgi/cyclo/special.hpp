#pragma once

#include <mutex>
#include <vector>

#include "fgi/cyclo/rational.hpp"
#include "fgi/cyclo/real.hpp"
#include "fgi/error.hpp"

namespace fgi {

/// Bernoulli number B_n (B_1 = -1/2), exact. Memoized.
inline Rational bernoulli(long n) {
    static std::mutex mu;
    static std::vector<Rational> table{Rational(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<long>(table.size()) <= n) {
        // sum_{j=0}^{k} C(k+1, j) B_j = 0
        long k = static_cast<long>(table.size());
        Rational s = 0;
        Integer binom = 1;  // C(k+1, j)
        for (long j = 0; j < k; ++j) {
            s += Rational(binom) * table[j];
            binom = binom * (k + 1 - j) / (j + 1);
        }
        Rational b = -s / Rational(k + 1);
        b.canonicalize();
        table.push_back(b);
    }
    return table[n];
}

/// log Gamma(x) together with the bookkeeping of the Stirling evaluation.
struct LogGammaResult {
    Real value;
    Real truncation_bound;  // magnitude of the first omitted asymptotic term
    long shift = 0;         // N in Gamma(x) = Gamma(x + N) / prod_{j<N} (x + j)
    long terms = 0;         // number of Bernoulli terms summed
};

/// log Gamma(x) for rational 0 < x <= 1 by argument shift and the Stirling series.
/// The series for real z > 0 is enveloping, so the first omitted term bounds the error.
inline LogGammaResult log_gamma_detailed(const Rational& x, const PrecisionContext& ctx) {
    if (x <= 0 || x > 1) throw MathError("log_gamma: argument must lie in (0, 1], got " + x.get_str());
    const int prec = ctx.working_bits();
    LogGammaResult res{Real(prec), Real(prec)};
    res.shift = static_cast<long>(0.15 * prec) + 2;
    Rational shifted_prod = 1;
    for (long j = 0; j < res.shift; ++j) shifted_prod *= x + j;
    Rational zq = x + res.shift;

    Real z(zq, prec);
    Real lz = log(z);
    Real two_pi = Real::pi(prec) * 2L;
    Real value = (z - Real(Rational(1, 2), prec)) * lz - z + log(two_pi) / 2L;

    const Real eps = Real::pow2(-prec - 2, prec);
    Real zpow = z;  // z^(2k-1)
    Real z2 = z * z;
    Real prev_mag = Real::pow2(1 << 20, prec);
    for (long k = 1;; ++k) {
        Rational coef = bernoulli(2 * k) / Rational(2 * k * (2 * k - 1));
        Real term = Real(coef, prec) / zpow;
        Real mag = abs(term);
        if (mag < eps) {
            res.truncation_bound = mag;
            break;
        }
        if (mag > prev_mag) throw PrecisionError("log_gamma: Stirling series diverged before reaching precision");
        value += term;
        prev_mag = mag;
        res.terms = k;
        zpow = zpow * z2;
    }
    res.value = value - log(Real(shifted_prod, prec));
    return res;
}

inline Real log_gamma(const Rational& x, const PrecisionContext& ctx) { return log_gamma_detailed(x, ctx).value; }

/// zeta_H(0, x) = 1/2 - x, exact.
inline Rational hurwitz_zeta0_value(const Rational& x) {
    if (x <= 0 || x > 1) throw MathError("hurwitz_zeta0: argument must lie in (0, 1]");
    return Rational(1, 2) - x;
}

/// d/ds zeta_H(s, x) at s = 0, via Lerch: log Gamma(x) - (1/2) log(2 pi).
inline Real hurwitz_zeta0_deriv(const Rational& x, const PrecisionContext& ctx) {
    const int prec = ctx.working_bits();
    return log_gamma(x, ctx) - log(Real::pi(prec) * 2L) / 2L;
}

}  // namespace fgi
