#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fgi/cyclo/cyclotomic.hpp"
#include "fgi/fields/field.hpp"

namespace fgi {

/// N_{Q(zeta_m)/Q}(x) as a rational number.
inline Rational cyc_norm(const CyclotomicNumber& x) {
    long m = x.modulus();
    CyclotomicNumber p = CyclotomicNumber::one(m);
    for (long t = 1; t <= m; ++t)
        if (std::gcd(t, m) == 1) p = p * x.galois(t);
    if (!p.is_rational()) throw MathError("internal: norm is not rational");
    return p.rational_value();
}

/// Multiplicative word in -1, zeta_f and the 1 - zeta_f^a, or an explicit element of Q(zeta_f).
///
/// Words are kept canonical: 1 - zeta^a appears only with 1 <= a <= f/2, using
/// 1 - zeta^a = -zeta^a (1 - zeta^{-a}).
class SUnit {
   public:
    SUnit() = default;
    explicit SUnit(long f) : f_(f) {
        if (f < 1) throw MathError("conductor must be positive");
    }
    static SUnit one(long f) { return SUnit(f); }
    static SUnit minus_one(long f) {
        SUnit u(f);
        u.sign_ = 1;
        return u;
    }
    static SUnit zeta(long f, long k = 1) {
        SUnit u(f);
        u.zeta_ = mod_pos(k, f);
        return u;
    }
    static SUnit one_minus_zeta(long f, long a, long e = 1) {
        SUnit u(f);
        u.mul_symbol(a, e);
        return u;
    }
    static SUnit from_element(const CyclotomicNumber& x) {
        if (x.is_zero()) throw MathError("zero is not a unit");
        SUnit u(x.modulus());
        u.explicit_ = x;
        return u;
    }

    long conductor() const { return f_; }
    bool is_word() const { return !explicit_.has_value(); }
    int sign_exponent() const { return sign_; }
    long zeta_exponent() const { return zeta_; }
    /// Exponents of 1 - zeta^a, 1 <= a <= f/2.
    const std::map<long, long>& symbols() const { return om_; }

    friend SUnit operator*(const SUnit& a, const SUnit& b) {
        if (a.f_ != b.f_) throw MathError("S-unit conductor mismatch");
        if (!a.is_word() || !b.is_word()) return from_element(a.expand() * b.expand());
        SUnit r = a;
        r.sign_ = (a.sign_ + b.sign_) % 2;
        r.zeta_ = (a.zeta_ + b.zeta_) % a.f_;
        for (auto& [s, e] : b.om_) r.mul_symbol(s, e);
        return r;
    }
    SUnit pow(long k) const {
        if (!is_word()) return from_element(explicit_->pow(k));
        SUnit r(f_);
        r.sign_ = static_cast<int>(mod_pos(sign_ * k, 2));
        r.zeta_ = mod_pos(static_cast<long>((__int128)zeta_ * k % f_), f_);
        for (auto& [s, e] : om_) r.mul_symbol(s, e * k);
        return r;
    }
    SUnit inverse() const { return pow(-1); }
    /// sigma_t: zeta -> zeta^t.
    SUnit galois(long t) const {
        if (std::gcd(t, f_) != 1) throw MathError("Galois exponent not coprime to the conductor");
        if (!is_word()) return from_element(explicit_->galois(t));
        SUnit r(f_);
        r.sign_ = sign_;
        r.zeta_ = mod_pos(zeta_ * t, f_);
        for (auto& [s, e] : om_) r.mul_symbol(s * t, e);
        return r;
    }

    /// Exact value in Q(zeta_f).
    CyclotomicNumber expand() const {
        if (explicit_) return *explicit_;
        CyclotomicNumber num = CyclotomicNumber::zeta_power(f_, zeta_), den = CyclotomicNumber::one(f_);
        if (sign_) num = num * Rational(-1);
        for (auto& [s, e] : om_) {
            CyclotomicNumber b = CyclotomicNumber::one(f_) - CyclotomicNumber::zeta_power(f_, s);
            if (e > 0) num = num * b.pow(e);
            else den = den * b.pow(-e);
        }
        return den == CyclotomicNumber::one(f_) ? num : num / den;
    }
    /// Numerator and denominator of the word as polynomial expressions (no inversion).
    std::pair<CyclotomicNumber, CyclotomicNumber> expand_fraction() const {
        if (explicit_) return {*explicit_, CyclotomicNumber::one(f_)};
        CyclotomicNumber num = CyclotomicNumber::zeta_power(f_, zeta_), den = CyclotomicNumber::one(f_);
        if (sign_) num = num * Rational(-1);
        for (auto& [s, e] : om_) {
            CyclotomicNumber b = CyclotomicNumber::one(f_) - CyclotomicNumber::zeta_power(f_, s);
            if (e > 0) num = num * b.pow(e);
            else den = den * b.pow(-e);
        }
        return {num, den};
    }

    /// The expansion is fixed by every sigma_h, h in H_K.
    bool lies_in(const FieldModel& K) const {
        if (K.conductor() != f_) throw MathError("field conductor differs from unit conductor");
        auto [n, d] = expand_fraction();
        for (long h : K.kernel())
            if (!(n.galois(h) * d == n * d.galois(h))) return false;
        return true;
    }

    /// log |iota_b(u)| for the embedding zeta -> exp(2 pi i b / f).
    Real log_abs(long b, int prec) const {
        if (std::gcd(b, f_) != 1) throw MathError("embedding exponent not coprime to the conductor");
        if (explicit_) {
            Complex z = explicit_->embed(b, prec);
            if (abs(z).is_zero()) throw MathError("zero is not a unit");
            return log(abs(z));
        }
        Real s(prec);
        Real pi = Real::pi(prec);
        for (auto& [a, e] : om_) {
            long t = mod_pos(a * b, f_);
            s += log(abs(sin(pi * make_rational(t, f_)))) * e;
        }
        if (!om_.empty()) {
            long tot = 0;
            for (auto& [a, e] : om_) tot += e;
            s += log(Real(2L, prec)) * tot;
        }
        return s;
    }

    /// Valuation at any prime of Q(zeta_f) above q (for words it is the same at all of them).
    long ord_above(long q) const {
        long qa = 1;
        while (f_ % (qa * q) == 0) qa *= q;
        if (explicit_) {
            if (qa != f_) throw UnsupportedError("valuation of an explicit element needs a prime-power conductor");
            Rational n = cyc_norm(*explicit_);
            long v = 0;
            Integer num = n.get_num(), den = n.get_den();
            while (num % q == 0) num /= q, ++v;
            while (den % q == 0) den /= q, --v;
            return v;
        }
        long v = 0;
        for (auto& [a, e] : om_) {
            long ord = f_ / std::gcd(a, f_);  // order of zeta^a
            long qj = 1;
            while (ord % (qj * q) == 0) qj *= q;
            if (qj == ord && ord > 1) v += e * (euler_phi(qa) / euler_phi(qj));
        }
        return v;
    }

    friend bool operator==(const SUnit& a, const SUnit& b) {
        return a.f_ == b.f_ && a.sign_ == b.sign_ && a.zeta_ == b.zeta_ && a.om_ == b.om_ && a.explicit_ == b.explicit_;
    }

    std::string to_string() const {
        if (explicit_) return "[" + explicit_->to_string() + "]";
        std::string s;
        auto add = [&](const std::string& t) { s += (s.empty() ? "" : " * ") + t; };
        if (sign_) add("-1");
        if (zeta_) add("z^" + std::to_string(zeta_));
        for (auto& [a, e] : om_) add("(1-z^" + std::to_string(a) + ")" + (e == 1 ? "" : "^" + std::to_string(e)));
        return s.empty() ? "1" : s;
    }

   private:
    void mul_symbol(long a, long e) {
        a = mod_pos(a, f_);
        if (a == 0) throw MathError("1 - zeta^0 = 0 is not a unit");
        if (e == 0) return;
        if (2 * a > f_) {
            // 1 - z^a = -z^a (1 - z^{f-a})
            sign_ = static_cast<int>(mod_pos(sign_ + e, 2));
            zeta_ = mod_pos(zeta_ + static_cast<long>((__int128)a * e % f_), f_);
            a = f_ - a;
        }
        long& x = om_[a];
        x += e;
        if (x == 0) om_.erase(a);
    }

    long f_ = 1;
    int sign_ = 0;
    long zeta_ = 0;
    std::map<long, long> om_;
    std::optional<CyclotomicNumber> explicit_;
};

/// log ||u||_w: |.| at real places, |.|^2 at complex places, N(w)^{-ord_w(u)} at finite places.
inline Real norm_at_place(const SUnit& u, const PlaceSet& P, long i, const PrecisionContext& ctx) {
    const auto& K = P.field();
    const auto& G = *K.group();
    int prec = ctx.working_bits();
    long f = K.conductor();
    const auto& pl = P.places().at(i);
    const auto& bp = P.base_places().at(pl.base);
    if (bp.infinite()) {
        // ||x||_{tau w} = |iota(tau^{-1} x)|
        long b = inv_mod(G.label(pl.rep), f);
        Real l = u.log_abs(b, prec);
        return P.is_complex_place(i) ? l * 2L : l;
    }
    long q = bp.q;
    long ord = u.ord_above(q);
    if (ord == 0) return Real(prec);
    long m = f;
    while (m % q == 0) m /= q;
    // ramification and residue degrees of Q(zeta_f)/K at q
    long Iq = 0, Dq = 0, IH = 0, DH = 0;
    std::set<long> pw{1 % m};
    for (long x = q % m; !pw.count(x); x = x * q % m) pw.insert(x);
    for (long a = 1; a < f; ++a) {
        if (std::gcd(a, f) != 1) continue;
        bool inI = (a % m) == 1 % m, inD = pw.count(a % m) > 0;
        Iq += inI, Dq += inD;
        if (K.in_kernel(a)) IH += inI, DH += inD;
    }
    long e_w = IH;
    long f_w = (Dq / Iq) / (DH / IH);
    if (ord % e_w != 0) throw MathError("internal: valuation not divisible by ramification index");
    return log(Real(q, prec)) * (-(ord / e_w) * f_w);
}

/// lambda(u) as the vector of log ||u||_w over S_K.
inline std::vector<Real> regulator_vector(const SUnit& u, const PlaceSet& P, const PrecisionContext& ctx) {
    std::vector<Real> v;
    for (long i = 0; i < P.num_places(); ++i) v.push_back(norm_at_place(u, P, i, ctx));
    return v;
}

}  // namespace fgi
