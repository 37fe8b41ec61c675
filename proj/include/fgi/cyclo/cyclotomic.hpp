#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fgi/cyclo/rational.hpp"
#include "fgi/cyclo/real.hpp"
#include "fgi/error.hpp"

namespace fgi {

namespace detail {

using IntPoly = std::vector<Integer>;   // little-endian coefficients
using RatPoly = std::vector<Rational>;  // little-endian coefficients

inline void trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline IntPoly compute_cyclotomic_poly(long m);

/// Memoized m-th cyclotomic polynomial. The cache only ever grows and entries are immutable.
inline std::shared_ptr<const IntPoly> cyclotomic_poly(long m) {
    static std::mutex mu;
    static std::map<long, std::shared_ptr<const IntPoly>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
    }
    auto p = std::make_shared<const IntPoly>(compute_cyclotomic_poly(m));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(m, p).first->second;
}

inline IntPoly compute_cyclotomic_poly(long m) {
    // x^m - 1 divided by Phi_d for every proper divisor d of m.
    IntPoly num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (long d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        const IntPoly& den = *cyclotomic_poly(d);
        long dn = static_cast<long>(num.size()) - 1, dd = static_cast<long>(den.size()) - 1;
        IntPoly q(dn - dd + 1, 0);
        for (long i = dn - dd; i >= 0; --i) {
            Integer c = num[i + dd];  // den is monic
            q[i] = c;
            if (c != 0)
                for (long j = 0; j <= dd; ++j) num[i + j] -= c * den[j];
        }
        num = std::move(q);
    }
    return num;
}

/// Reduce a dense polynomial modulo the monic integer polynomial phi.
inline RatPoly reduce_mod(RatPoly p, const IntPoly& phi) {
    long deg = static_cast<long>(phi.size()) - 1;
    for (long i = static_cast<long>(p.size()) - 1; i >= deg; --i) {
        if (p[i] == 0) continue;
        Rational c = p[i];
        for (long j = 0; j <= deg; ++j) p[i - deg + j] -= c * phi[j];
    }
    p.resize(deg, Rational(0));
    return p;
}

inline RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) r[i + j] += a[i] * b[j];
    }
    return r;
}

inline RatPoly poly_sub(RatPoly a, const RatPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

/// Polynomial division over Q: a = q*b + r.
inline void poly_divmod(RatPoly a, const RatPoly& b, RatPoly& q, RatPoly& r) {
    trim(a);
    long db = static_cast<long>(b.size()) - 1;
    long da = static_cast<long>(a.size()) - 1;
    q.assign(da >= db ? da - db + 1 : 0, Rational(0));
    for (long i = da - db; i >= 0; --i) {
        Rational c = a[i + db] / b[db];
        q[i] = c;
        if (c != 0)
            for (long j = 0; j <= db; ++j) a[i + j] -= c * b[j];
    }
    trim(a);
    r = std::move(a);
}

}  // namespace detail

/// Exact element of Q(zeta_m) on the power basis {zeta^i : 0 <= i < phi(m)} reduced modulo Phi_m.
class CyclotomicNumber {
   public:
    CyclotomicNumber() : CyclotomicNumber(1) {}
    explicit CyclotomicNumber(long m) : m_(m) {
        if (m < 1) throw MathError("cyclotomic modulus must be positive");
        c_.assign(euler_phi(m), Rational(0));
    }
    CyclotomicNumber(long m, const Rational& q) : CyclotomicNumber(m) { c_[0] = q; }

    /// Element from coefficients on zeta^0, zeta^1, ... (any length; reduced).
    static CyclotomicNumber from_coeffs(long m, std::vector<Rational> coeffs) {
        CyclotomicNumber x(m);
        x.c_ = normalize(m, std::move(coeffs));
        return x;
    }
    static CyclotomicNumber zeta_power(long m, long k) {
        std::vector<Rational> v(m, Rational(0));
        v[mod_pos(k, m)] = 1;
        return from_coeffs(m, std::move(v));
    }
    static CyclotomicNumber zero(long m) { return CyclotomicNumber(m); }
    static CyclotomicNumber one(long m) { return CyclotomicNumber(m, Rational(1)); }

    long modulus() const { return m_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& q : c_)
            if (q != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    const Rational& rational_value() const {
        if (!is_rational()) throw MathError("cyclotomic number is not rational: " + to_string());
        return c_[0];
    }

    friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
        return a.m_ == b.m_ && a.c_ == b.c_;
    }

    CyclotomicNumber& operator+=(const CyclotomicNumber& b) {
        check_same(b);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
        return *this;
    }
    CyclotomicNumber& operator-=(const CyclotomicNumber& b) {
        check_same(b);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] -= b.c_[i];
        return *this;
    }
    friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
    friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
    CyclotomicNumber operator-() const {
        CyclotomicNumber r = *this;
        for (auto& q : r.c_) q = -q;
        return r;
    }
    friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
        a.check_same(b);
        CyclotomicNumber r(a.m_);
        r.c_ = normalize(a.m_, detail::poly_mul(a.c_, b.c_));
        return r;
    }
    CyclotomicNumber& operator*=(const CyclotomicNumber& b) { return *this = *this * b; }
    friend CyclotomicNumber operator*(CyclotomicNumber a, const Rational& s) {
        for (auto& q : a.c_) q *= s;
        return a;
    }
    friend CyclotomicNumber operator/(const CyclotomicNumber& a, const CyclotomicNumber& b) {
        return a * b.inverse();
    }

    /// Inverse via the extended Euclidean algorithm against Phi_m.
    CyclotomicNumber inverse() const {
        if (is_zero()) throw MathError("division by zero in Q(zeta_" + std::to_string(m_) + ")");
        auto phi = detail::cyclotomic_poly(m_);
        detail::RatPoly r0(phi->begin(), phi->end()), r1 = c_;
        detail::trim(r1);
        detail::RatPoly s0, s1{Rational(1)};  // coefficient of x in r_i = s_i x + t_i Phi
        while (!(r1.size() == 1)) {
            detail::RatPoly q, r;
            detail::poly_divmod(r0, r1, q, r);
            detail::RatPoly s = detail::poly_sub(s0, detail::poly_mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
            if (r1.empty()) throw MathError("non-invertible cyclotomic element (not coprime to Phi_m)");
        }
        Rational lead = r1[0];
        for (auto& q : s1) q /= lead;
        return from_coeffs(m_, std::move(s1));
    }

    CyclotomicNumber pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        CyclotomicNumber r = one(m_), b = *this;
        while (e > 0) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }

    /// sigma_t : zeta -> zeta^t.
    CyclotomicNumber galois(long t) const {
        if (gcd_l(mod_pos(t, m_), m_) != 1)
            throw MathError("galois: " + std::to_string(t) + " not coprime to " + std::to_string(m_));
        std::vector<Rational> v(m_, Rational(0));
        for (size_t i = 0; i < c_.size(); ++i) v[mod_pos(static_cast<long>(i) * t, m_)] += c_[i];
        return from_coeffs(m_, std::move(v));
    }

    /// The same number viewed in Q(zeta_M), M a multiple of m.
    CyclotomicNumber lift(long M) const {
        if (M % m_ != 0) throw MathError("lift: " + std::to_string(M) + " is not a multiple of " + std::to_string(m_));
        long k = M / m_;
        std::vector<Rational> v(M, Rational(0));
        for (size_t i = 0; i < c_.size(); ++i) v[static_cast<long>(i) * k] = c_[i];
        return from_coeffs(M, std::move(v));
    }

    /// Value under zeta -> exp(2 pi i a / m), computed at prec bits.
    Complex embed(long a, int prec) const {
        if (gcd_l(mod_pos(a, m_), m_) != 1)
            throw MathError("embed: " + std::to_string(a) + " not coprime to " + std::to_string(m_));
        Complex sum(prec);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            Complex w = Complex::root_of_unity(static_cast<long>(i) * a, m_, prec);
            sum += w * Real(c_[i], prec);
        }
        return sum;
    }

    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << c_[i].get_str() << ")";
            if (i > 0) os << "*z" << m_ << "^" << i;
        }
        if (first) os << "0";
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const CyclotomicNumber& x) { return os << x.to_string(); }

   private:
    static std::vector<Rational> normalize(long m, std::vector<Rational> v) {
        auto phi = detail::cyclotomic_poly(m);
        // Fold exponents >= m first (zeta^m = 1), then reduce modulo Phi_m.
        if (static_cast<long>(v.size()) > m) {
            for (size_t i = m; i < v.size(); ++i) v[i % m] += v[i];
            v.resize(m);
        }
        return detail::reduce_mod(std::move(v), *phi);
    }
    void check_same(const CyclotomicNumber& b) const {
        if (m_ != b.m_)
            throw MathError("cyclotomic modulus mismatch: " + std::to_string(m_) + " vs " + std::to_string(b.m_));
    }

    long m_;
    std::vector<Rational> c_;
};

enum class CycOp { add, mul, div };

inline CyclotomicNumber cyc_arith(const CyclotomicNumber& a, const CyclotomicNumber& b, CycOp op) {
    switch (op) {
        case CycOp::add: return a + b;
        case CycOp::mul: return a * b;
        case CycOp::div: return a / b;
    }
    throw MathError("unknown op");
}

inline CyclotomicNumber cyc_galois(long t, const CyclotomicNumber& x) { return x.galois(t); }

/// Complex embedding zeta_m -> exp(2 pi i a/m), carried at the context's working precision.
inline Complex cyc_embed(const CyclotomicNumber& x, long a, const PrecisionContext& ctx) {
    return x.embed(a, ctx.working_bits());
}

/// Common modulus for two numbers, lifting both.
inline std::pair<CyclotomicNumber, CyclotomicNumber> cyc_common(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    long M = lcm_l(a.modulus(), b.modulus());
    return {a.lift(M), b.lift(M)};
}

}  // namespace fgi
