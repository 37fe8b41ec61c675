#pragma once

// Independent reference computations used only by the test suites.

#include "fgi/cyclo/rational.hpp"
#include "fgi/cyclo/real.hpp"
#include "fgi/cyclo/special.hpp"

namespace fgi::oracle {

/// zeta_H(s, x) for real s near 0 by Euler-Maclaurin summation with N direct terms.
inline Real hurwitz_euler_maclaurin(const Real& s, const Rational& x, int prec, long N = 60, long K = 40) {
    Real sum(prec);
    Real xr(x, prec);
    for (long n = 0; n < N; ++n) sum += pow(xr + Real(n, prec), -s);
    Real y = xr + Real(N, prec);
    Real one(1L, prec);
    sum += pow(y, one - s) / (s - one);
    sum += pow(y, -s) / 2L;
    // B_{2k}/(2k)! * s(s+1)...(s+2k-2) * y^{-s-2k+1}
    Real rising = s;  // (s)_{1}
    Integer fact = 2;  // (2k)!
    for (long k = 1; k <= K; ++k) {
        if (k > 1) {
            rising = rising * (s + Real(2 * k - 3, prec)) * (s + Real(2 * k - 2, prec));
            fact *= (2 * k - 1) * (2 * k);
        }
        Real coef(bernoulli(2 * k) / Rational(fact), prec);
        sum += coef * rising * pow(y, -s - Real(2 * k - 1, prec));
    }
    return sum;
}

/// d/ds zeta_H(s, x) at s = 0 by a four-point central difference of the Euler-Maclaurin sum.
inline Real hurwitz_deriv_oracle(const Rational& x, int prec = 640) {
    Real h = Real::pow2(-64, prec);
    auto f = [&](long k) { return hurwitz_euler_maclaurin(h * k, x, prec); };
    return (f(-2) - f(-1) * 8L + f(1) * 8L - f(2)) / (h * 12L);
}

}  // namespace fgi::oracle
