#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "fgi/error.hpp"

namespace fgi {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw InputError("malformed rational: '" + s + "'");
    if (q.get_den() == 0) throw InputError("zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline long mod_pos(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

inline long gcd_l(long a, long b) { return std::gcd(a, b); }
inline long lcm_l(long a, long b) { return a / std::gcd(a, b) * b; }

/// Euler phi by trial division.
inline long euler_phi(long n) {
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

inline std::vector<long> prime_divisors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

inline long ipow(long b, long e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

/// Inverse of a modulo m; throws when gcd(a, m) != 1.
inline long inv_mod(long a, long m) {
    if (m == 1) return 0;
    long old_r = mod_pos(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
        long q = old_r / r;
        long t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw MathError("inv_mod: " + std::to_string(a) + " not invertible mod " + std::to_string(m));
    return mod_pos(old_s, m);
}

inline long pow_mod(long b, long e, long m) {
    long r = 1 % m;
    b = mod_pos(b, m);
    while (e > 0) {
        if (e & 1) r = static_cast<long>((static_cast<__int128>(r) * b) % m);
        b = static_cast<long>((static_cast<__int128>(b) * b) % m);
        e >>= 1;
    }
    return r;
}

}  // namespace fgi
