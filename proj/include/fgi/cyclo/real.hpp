#pragma once

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "fgi/cyclo/rational.hpp"
#include "fgi/error.hpp"

namespace fgi {

/// Guard bits carried by every numeric routine on top of the requested precision.
inline constexpr int kGuardBits = 32;

/// Explicit numeric context: mantissa bits and a comparison tolerance 2^tol_exp.
struct PrecisionContext {
    int bits = 192;
    int tol_exp = -100;

    PrecisionContext() = default;
    PrecisionContext(int b, int t) : bits(b), tol_exp(t) { validate(); }

    /// Precision used internally (requested bits plus guard digits).
    int working_bits() const { return bits + kGuardBits; }

    void validate() const {
        if (bits < 64) throw PrecisionError("precision must be at least 64 bits, got " + std::to_string(bits));
        if (tol_exp >= 0) throw PrecisionError("tolerance exponent must be negative");
        // Leave 16 bits of headroom for accumulated rounding in sums of logs.
        if (-tol_exp > bits - 16)
            throw PrecisionError("tolerance 2^" + std::to_string(tol_exp) + " unreachable at " + std::to_string(bits) +
                                 " bits (need bits >= " + std::to_string(16 - tol_exp) + ")");
    }
};

/// RAII MPFR value. Results of binary operations take the larger operand precision.
class Real {
   public:
    explicit Real(int prec = 128) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(long x, int prec) {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, x, MPFR_RNDN);
    }
    Real(const Rational& q, int prec) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }
    Real(const Integer& z, int prec) {
        mpfr_init2(v_, prec);
        mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    int prec() const { return static_cast<int>(mpfr_get_prec(v_)); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    static Real pi(int prec) {
        Real r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    /// 2^e exactly.
    static Real pow2(long e, int prec) {
        Real r(1, prec);
        mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
        return r;
    }

    Real rounded(int prec) const {
        Real r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    /// Nearest integer (ties away from zero).
    Integer round_to_integer() const {
        Integer z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDNA);
        return z;
    }
    /// Base-2 exponent of |x| (x = m * 2^e with 1/2 <= |m| < 1); very negative for zero.
    long exponent2() const { return is_zero() ? -(1L << 40) : mpfr_get_exp(v_); }

    std::string to_string(int digits = 40) const {
        if (mpfr_nan_p(v_)) return "nan";
        if (is_zero()) return "0";
        mpfr_exp_t e;
        char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
        std::string m(s);
        mpfr_free_str(s);
        std::string sign;
        if (!m.empty() && m[0] == '-') {
            sign = "-";
            m.erase(0, 1);
        }
        return sign + m.substr(0, 1) + "." + m.substr(1) + "e" + std::to_string(static_cast<long>(e) - 1);
    }

#define FGI_REAL_BINOP(op, fn)                                                   \
    friend Real operator op(const Real& a, const Real& b) {                     \
        Real r(std::max(a.prec(), b.prec()));                                    \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                         \
        return r;                                                                \
    }                                                                            \
    Real& operator op##=(const Real& b) {                                        \
        if (b.prec() > prec()) mpfr_prec_round(v_, b.prec(), MPFR_RNDN);          \
        fn(v_, v_, b.v_, MPFR_RNDN);                                             \
        return *this;                                                            \
    }
    FGI_REAL_BINOP(+, mpfr_add)
    FGI_REAL_BINOP(-, mpfr_sub)
    FGI_REAL_BINOP(*, mpfr_mul)
    FGI_REAL_BINOP(/, mpfr_div)
#undef FGI_REAL_BINOP

    friend Real operator*(const Real& a, long b) {
        Real r(a.prec());
        mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, long b) {
        Real r(a.prec());
        mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, const Rational& q) { return a * Real(q, a.prec()); }
    Real operator-() const {
        Real r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

#define FGI_REAL_UNARY(name, fn)      \
    friend Real name(const Real& a) { \
        Real r(a.prec());             \
        fn(r.v_, a.v_, MPFR_RNDN);    \
        return r;                     \
    }
    FGI_REAL_UNARY(log, mpfr_log)
    FGI_REAL_UNARY(exp, mpfr_exp)
    FGI_REAL_UNARY(sin, mpfr_sin)
    FGI_REAL_UNARY(cos, mpfr_cos)
    FGI_REAL_UNARY(sqrt, mpfr_sqrt)
    FGI_REAL_UNARY(abs, mpfr_abs)
    FGI_REAL_UNARY(atan, mpfr_atan)
#undef FGI_REAL_UNARY

    friend Real atan2(const Real& y, const Real& x) {
        Real r(std::max(y.prec(), x.prec()));
        mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
        return r;
    }
    friend Real pow(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real pow(const Real& a, long n) {
        Real r(a.prec());
        mpfr_pow_si(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }

   private:
    mpfr_t v_;
};

/// Complex number over Real.
struct Complex {
    Real re, im;

    explicit Complex(int prec = 128) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(Real r) : re(std::move(r)), im(0L, re.prec()) {}

    int prec() const { return std::max(re.prec(), im.prec()); }

    /// exp(2 pi i * num / den).
    static Complex root_of_unity(long num, long den, int prec) {
        Real angle = Real::pi(prec) * (2 * mod_pos(num, den)) / den;
        return {cos(angle), sin(angle)};
    }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    Complex& operator+=(const Complex& b) {
        re += b.re;
        im += b.im;
        return *this;
    }
    Complex conj() const { return {re, -im}; }
    Real norm2() const { return re * re + im * im; }
    friend Real abs(const Complex& a) { return sqrt(a.norm2()); }
};

/// The context tolerance 2^tol_exp as a Real at working precision.
inline Real tolerance(const PrecisionContext& ctx) { return Real::pow2(ctx.tol_exp, ctx.working_bits()); }

}  // namespace fgi
