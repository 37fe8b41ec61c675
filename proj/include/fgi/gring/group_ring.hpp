#pragma once

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fgi/cyclo/cyclotomic.hpp"
#include "fgi/gring/character.hpp"

namespace fgi {

/// Element of T[G]: coefficient vector indexed by group element.
/// T is Rational (Q[G]) or CyclotomicNumber (Q(zeta)[G] scratch space).
template <class T>
class GroupRingElement {
   public:
    GroupRingElement() = default;
    GroupRingElement(GroupPtr g, const T& zero) : g_(std::move(g)), c_(g_->order(), zero) {}
    GroupRingElement(GroupPtr g, std::vector<T> coeffs) : g_(std::move(g)), c_(std::move(coeffs)) {
        if (static_cast<long>(c_.size()) != g_->order()) throw MathError("group ring coefficient vector has wrong length");
    }

    const GroupPtr& group() const { return g_; }
    const std::vector<T>& coeffs() const { return c_; }
    const T& operator[](long sigma) const { return c_.at(sigma); }
    T& operator[](long sigma) { return c_.at(sigma); }
    long size() const { return static_cast<long>(c_.size()); }

    GroupRingElement& operator+=(const GroupRingElement& o) {
        require_same_group(g_, o.g_);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        return *this;
    }
    GroupRingElement& operator-=(const GroupRingElement& o) {
        require_same_group(g_, o.g_);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        return *this;
    }
    friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
    friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
    friend GroupRingElement operator-(GroupRingElement a) {
        for (auto& x : a.c_) x = x * Rational(-1);
        return a;
    }
    friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
        require_same_group(a.g_, b.g_);
        GroupRingElement r(a.g_, a.c_.at(0) - a.c_.at(0));
        const auto& G = *a.g_;
        for (long i = 0; i < G.order(); ++i) {
            if (is_zero_coeff(a.c_[i])) continue;
            for (long j = 0; j < G.order(); ++j) {
                if (is_zero_coeff(b.c_[j])) continue;
                long k = G.mul(i, j);
                r.c_[k] = r.c_[k] + a.c_[i] * b.c_[j];
            }
        }
        return r;
    }
    friend GroupRingElement operator*(GroupRingElement a, const Rational& q) {
        for (auto& x : a.c_) x = x * q;
        return a;
    }
    friend GroupRingElement operator*(const Rational& q, GroupRingElement a) { return a * q; }
    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
        return *a.g_ == *b.g_ && a.c_ == b.c_;
    }

    /// Multiplication by the group element sigma (a permutation of coefficients).
    GroupRingElement shifted(long sigma) const {
        GroupRingElement r(g_, c_);
        for (long i = 0; i < g_->order(); ++i) r.c_[g_->mul(sigma, i)] = c_[i];
        return r;
    }

    bool is_zero() const {
        for (auto& x : c_)
            if (!is_zero_coeff(x)) return false;
        return true;
    }

   private:
    static bool is_zero_coeff(const Rational& q) { return q == 0; }
    static bool is_zero_coeff(const CyclotomicNumber& x) { return x.is_zero(); }

    GroupPtr g_;
    std::vector<T> c_;
};

using QG = GroupRingElement<Rational>;
using CycG = GroupRingElement<CyclotomicNumber>;

inline QG qg_zero(const GroupPtr& g) { return QG(g, Rational(0)); }
inline QG qg_element(const GroupPtr& g, long sigma, const Rational& coef = 1) {
    QG x = qg_zero(g);
    x[sigma] = coef;
    return x;
}
inline QG qg_one(const GroupPtr& g) { return qg_element(g, 0); }
/// Sum of all group elements (the norm element N_G).
inline QG qg_norm(const GroupPtr& g) { return QG(g, std::vector<Rational>(g->order(), Rational(1))); }

inline Rational augmentation(const QG& x) {
    Rational s = 0;
    for (auto& q : x.coeffs()) s += q;
    return s;
}

/// kappa: sigma -> sigma^{-1}, extended linearly.
template <class T>
GroupRingElement<T> kappa(const GroupRingElement<T>& x) {
    GroupRingElement<T> r = x;
    const auto& G = *x.group();
    for (long i = 0; i < G.order(); ++i) r[G.inv(i)] = x[i];
    return r;
}

inline bool is_integral(const QG& x) {
    for (auto& q : x.coeffs())
        if (q.get_den() != 1) return false;
    return true;
}

/// Least common denominator of the coefficients.
inline Integer denominator(const QG& x) {
    Integer d = 1;
    for (auto& q : x.coeffs()) d = lcm(d, Integer(q.get_den()));
    return d;
}

/// Push coefficients forward along a group homomorphism given as an element map.
inline QG push_forward(const QG& x, const std::vector<long>& map, const GroupPtr& target) {
    if (static_cast<long>(map.size()) != x.size()) throw MathError("element map has wrong length");
    QG r = qg_zero(target);
    for (long i = 0; i < x.size(); ++i) r[map[i]] += x[i];
    return r;
}

/// chi(x) = sum_sigma x_sigma chi(sigma), as an element of Q(zeta_M).
inline CyclotomicNumber chi_apply(const QG& x, const Character& chi, long M) {
    long E = chi.value_modulus();
    if (M % E != 0) throw MathError("character values do not lie in Q(zeta_M)");
    std::vector<Rational> v(M, Rational(0));
    for (long i = 0; i < x.size(); ++i)
        if (x[i] != 0) v[chi.value_exponent(i) * (M / E)] += x[i];
    return CyclotomicNumber::from_coeffs(M, std::move(v));
}
inline CyclotomicNumber chi_apply(const QG& x, const Character& chi) { return chi_apply(x, chi, chi.value_modulus()); }

/// e_chi = |G|^{-1} sum_sigma chi(sigma) sigma^{-1}, coefficients in Q(zeta_E).
inline CycG idempotent(const Character& chi) {
    const auto& g = chi.group();
    long E = chi.value_modulus();
    CycG e(g, CyclotomicNumber::zero(E));
    Rational inv_n = make_rational(1, g->order());
    for (long s = 0; s < g->order(); ++s) e[g->inv(s)] = chi.value(s) * inv_n;
    return e;
}

/// Sum of e_chi over a Galois-stable set of characters; the result is rational.
inline QG idempotent_sum(const GroupPtr& g, const std::function<bool(const Character&)>& pick) {
    long E = g->exponent();
    std::vector<CyclotomicNumber> acc(g->order(), CyclotomicNumber::zero(E));
    for (const auto& chi : characters(g)) {
        if (!pick(chi)) continue;
        for (long s = 0; s < g->order(); ++s) acc[g->inv(s)] = acc[g->inv(s)] + chi.value(s);
    }
    QG r = qg_zero(g);
    for (long s = 0; s < g->order(); ++s) {
        if (!acc[s].is_rational()) throw MathError("character set is not Galois-stable");
        r[s] = acc[s].rational_value() / g->order();
    }
    return r;
}

/// e_+ = (1 + c)/2 and e_- = (1 - c)/2 for an element c of order 2.
inline QG e_plus(const GroupPtr& g, long c) { return (qg_one(g) + qg_element(g, c)) * make_rational(1, 2); }
inline QG e_minus(const GroupPtr& g, long c) { return (qg_one(g) - qg_element(g, c)) * make_rational(1, 2); }

/// sum_chi h(chi) e_chi with h indexed like characters(G). Throws if the result is not rational,
/// naming a character chi and a twist t with h(chi^t) != h(chi)^t.
inline QG assemble(const GroupPtr& g, const std::vector<CyclotomicNumber>& h) {
    auto chars = characters(g);
    if (h.size() != chars.size()) throw MathError("assemble: one value per character required");
    long M = g->exponent();
    for (auto& v : h) M = lcm_l(M, v.modulus());
    std::vector<CyclotomicNumber> hv;
    hv.reserve(h.size());
    for (auto& v : h) hv.push_back(v.lift(M));
    QG r = qg_zero(g);
    bool ok = true;
    long E = g->exponent();
    std::vector<std::vector<long>> vexp(chars.size());
    for (size_t c = 0; c < chars.size(); ++c) {
        vexp[c].resize(g->order());
        for (long s = 0; s < g->order(); ++s) vexp[c][s] = chars[c].value_exponent(s) * (M / E);
    }
    for (long t = 0; t < g->order() && ok; ++t) {
        // accumulate sum_chi h(chi) chi(t^{-1}) modulo x^M - 1, then reduce once
        std::vector<Rational> acc(M, Rational(0));
        long tinv = g->inv(t);
        for (size_t c = 0; c < chars.size(); ++c) {
            const auto& co = hv[c].coeffs();
            long sh = vexp[c][tinv];
            for (size_t i = 0; i < co.size(); ++i)
                if (co[i] != 0) acc[(i + sh) % M] += co[i];
        }
        CyclotomicNumber s = CyclotomicNumber::from_coeffs(M, std::move(acc));
        if (!s.is_rational()) {
            ok = false;
            break;
        }
        r[t] = s.rational_value() / g->order();
    }
    if (ok) return r;
    for (const auto& chi : chars)
        for (long t = 2; t < M; ++t) {
            if (std::gcd(t, M) != 1) continue;
            if (!(hv[chi.twist(t).index()] == hv[chi.index()].galois(t)))
                throw MathError("assemble: values not Galois-equivariant at " + chi.to_string() + ", twist " +
                                std::to_string(t));
        }
    throw MathError("assemble: non-rational result");
}

template <class T>
std::string to_string(const GroupRingElement<T>& x) {
    std::ostringstream os;
    bool first = true;
    for (long i = 0; i < x.size(); ++i) {
        std::string c;
        if constexpr (std::is_same_v<T, Rational>) {
            if (x[i] == 0) continue;
            c = x[i].get_str();
        } else {
            if (x[i].is_zero()) continue;
            c = "(" + x[i].to_string() + ")";
        }
        os << (first ? "" : " + ") << c << "*" << x.group()->element_name(i);
        first = false;
    }
    return first ? "0" : os.str();
}

/// Determinant of a square matrix over Q[G]: character-wise scalar determinants, reassembled.
inline QG det_qg(const std::vector<std::vector<QG>>& m, const GroupPtr& g) {
    long n = static_cast<long>(m.size());
    for (auto& row : m)
        if (static_cast<long>(row.size()) != n) throw MathError("det_qg: matrix not square");
    if (n == 0) return qg_one(g);
    long E = g->exponent();
    auto chars = characters(g);
    std::vector<CyclotomicNumber> h;
    h.reserve(chars.size());
    for (const auto& chi : chars) {
        std::vector<std::vector<CyclotomicNumber>> a(n, std::vector<CyclotomicNumber>(n));
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) a[i][j] = chi_apply(m[i][j], chi, E);
        CyclotomicNumber det = CyclotomicNumber::one(E);
        for (long col = 0; col < n && !det.is_zero(); ++col) {
            long piv = -1;
            for (long r = col; r < n; ++r)
                if (!a[r][col].is_zero()) {
                    piv = r;
                    break;
                }
            if (piv < 0) {
                det = CyclotomicNumber::zero(E);
                break;
            }
            if (piv != col) std::swap(a[piv], a[col]), det = det * Rational(-1);
            det = det * a[col][col];
            CyclotomicNumber inv = a[col][col].inverse();
            for (long r = col + 1; r < n; ++r) {
                if (a[r][col].is_zero()) continue;
                CyclotomicNumber f = a[r][col] * inv;
                for (long c = col; c < n; ++c) a[r][c] = a[r][c] - f * a[col][c];
            }
        }
        h.push_back(det);
    }
    return assemble(g, h);
}

/// Inverse in Q[G]; throws if some chi(x) vanishes.
inline QG qg_inverse(const QG& x) {
    const auto& g = x.group();
    long E = g->exponent();
    std::vector<CyclotomicNumber> h;
    for (const auto& chi : characters(g)) {
        auto v = chi_apply(x, chi, E);
        if (v.is_zero()) throw MathError("element is not invertible in Q[G]: vanishes at " + chi.to_string());
        h.push_back(v.inverse());
    }
    return assemble(g, h);
}

}  // namespace fgi
