#pragma once

#include <vector>

#include "fgi/cyclo/special.hpp"
#include "fgi/fields/field.hpp"
#include "fgi/gring/group_ring.hpp"
#include "fgi/lfun/dirichlet.hpp"

namespace fgi {

namespace detail {

inline void require_base_q(const PlaceSet& P) {
    if (P.field().base() != BaseField::rational)
        throw UnsupportedError("L-functions are evaluated over Q only; relative values go through induction");
    if (!P.contains_ramified()) throw MathError("S must contain every prime dividing the conductor");
}

/// Primes of S not dividing the conductor.
inline std::vector<long> extra_primes(const PlaceSet& P) {
    std::vector<long> out;
    for (auto& b : P.base_places())
        if (!b.infinite() && P.field().conductor() % b.q != 0) out.push_back(b.q);
    return out;
}

}  // namespace detail

/// L_S(0, chi) for a Dirichlet character and a finite set of primes S (S must contain the primes of the modulus).
inline CyclotomicNumber l_value_at_0(const DirichletCharacter& chi, const std::vector<long>& primes) {
    long E = chi.value_modulus();
    auto chi0 = chi.primitive();
    CyclotomicNumber v(E);
    if (chi0.modulus() == 1) v = CyclotomicNumber(E, make_rational(-1, 2));
    else v = bernoulli_b1(chi0) * Rational(-1);
    for (long q : primes)
        if (chi0.modulus() % q != 0) v = v * (CyclotomicNumber::one(E) - chi0.value(q));
    return v;
}

/// L_{K/Q,S}(0, chi) for a character of Gal(K/Q), exact in Q(zeta_E).
inline CyclotomicNumber l_value_at_0(const Character& chi, const PlaceSet& P) {
    detail::require_base_q(P);
    std::vector<long> primes;
    for (auto& b : P.base_places())
        if (!b.infinite()) primes.push_back(b.q);
    return l_value_at_0(DirichletCharacter::inflate(chi), primes);
}

/// zeta_S(0, sigma) for every sigma in G, exact.
inline std::vector<Rational> partial_zeta0_values(const PlaceSet& P) {
    detail::require_base_q(P);
    const auto& G = *P.group();
    long f = P.field().conductor();
    std::vector<Rational> v(G.order(), Rational(0));
    for (long a = 1; a < f; ++a)
        if (std::gcd(a, f) == 1) v[G.from_label(a)] += hurwitz_zeta0_value(make_rational(a, f));
    for (long q : detail::extra_primes(P)) {
        long sq = G.inv(G.from_label(q));
        std::vector<Rational> w(G.order());
        for (long s = 0; s < G.order(); ++s) w[s] = v[s] - v[G.mul(s, sq)];
        v = std::move(w);
    }
    return v;
}

/// zeta_S'(0, sigma) for every sigma in G, at working precision.
inline std::vector<Real> partial_zeta0_derivs(const PlaceSet& P, const PrecisionContext& ctx) {
    detail::require_base_q(P);
    const auto& G = *P.group();
    long f = P.field().conductor();
    int prec = ctx.working_bits();
    Real logf = log(Real(f, prec));
    std::vector<Real> d(G.order(), Real(prec));
    std::vector<Rational> v(G.order(), Rational(0));
    for (long a = 1; a < f; ++a) {
        if (std::gcd(a, f) != 1) continue;
        Rational x = make_rational(a, f);
        long s = G.from_label(a);
        d[s] += hurwitz_zeta0_deriv(x, ctx) - logf * hurwitz_zeta0_value(x);
        v[s] += hurwitz_zeta0_value(x);
    }
    // adding q to S multiplies by (1 - q^{-s} sigma_q^{-1})
    for (long q : detail::extra_primes(P)) {
        long sq = G.inv(G.from_label(q));
        Real logq = log(Real(q, prec));
        std::vector<Real> dn;
        std::vector<Rational> vn(G.order());
        for (long s = 0; s < G.order(); ++s) {
            long t = G.mul(s, sq);
            dn.push_back(d[s] + logq * v[t] - d[t]);
            vn[s] = v[s] - v[t];
        }
        d = std::move(dn);
        v = std::move(vn);
    }
    return d;
}

inline Rational partial_zeta0_value(const PlaceSet& P, long sigma) { return partial_zeta0_values(P).at(sigma); }
inline Real partial_zeta0_deriv(const PlaceSet& P, long sigma, const PrecisionContext& ctx) {
    return partial_zeta0_derivs(P, ctx).at(sigma);
}

/// theta_{K/Q,S} = sum_chi L_S(0, chi) e_{conj chi}, assembled from exact L-values.
inline QG stickelberger(const PlaceSet& P) {
    const auto& g = P.group();
    std::vector<CyclotomicNumber> h;
    for (auto& chi : characters(g)) h.push_back(l_value_at_0(chi.conj(), P));
    return assemble(g, h);
}

/// sum_sigma zeta_S(0, sigma) sigma^{-1}, from partial zeta values.
inline QG stickelberger_from_partial_zeta(const PlaceSet& P) {
    const auto& g = P.group();
    auto v = partial_zeta0_values(P);
    QG t = qg_zero(g);
    for (long s = 0; s < g->order(); ++s) t[g->inv(s)] = v[s];
    return t;
}

/// Classical theta_Stick = sum_a (a/f) sigma_a^{-1} in Q[(Z/f)^x].
inline QG classical_stickelberger(const GroupPtr& g) {
    long f = g->conductor();
    QG t = qg_zero(g);
    for (long a = 1; a < f; ++a)
        if (std::gcd(a, f) == 1) t[g->inv(g->from_label(a))] += make_rational(a, f);
    return t;
}

/// Half Stickelberger element sum_{sigma in H} zeta_{K/Q,S}(0, sigma) sigma^{-1} on the group of the relative field.
inline QG half_stickelberger(const FieldModel& Krel) {
    if (Krel.base() != BaseField::imaginary_quadratic) throw MathError("half Stickelberger needs the relative field");
    const auto& h = Krel.group();
    long f = Krel.conductor();
    QG t = qg_zero(h);
    for (long a : Krel.ambient()) t[h->inv(h->from_label(a))] += hurwitz_zeta0_value(make_rational(a, f));
    return t;
}

/// L_S'(0, chi) = sum_sigma chi(sigma) zeta_S'(0, sigma).
inline Complex l_deriv_at_0(const Character& chi, const std::vector<Real>& zeta_derivs, int prec) {
    const auto& G = *chi.group();
    Complex s(prec);
    for (long g = 0; g < G.order(); ++g)
        s += Complex::root_of_unity(chi.value_exponent(g), chi.value_modulus(), prec) * zeta_derivs[g];
    return s;
}
inline Complex l_deriv_at_0(const Character& chi, const PlaceSet& P, const PrecisionContext& ctx) {
    return l_deriv_at_0(chi, partial_zeta0_derivs(P, ctx), ctx.working_bits());
}

/// Numeric sum_sigma chi(sigma) zeta_S(0, sigma), evaluated with complex character values.
inline Complex l_value_numeric(const Character& chi, const PlaceSet& P, const PrecisionContext& ctx) {
    int prec = ctx.working_bits();
    auto v = partial_zeta0_values(P);
    const auto& G = *chi.group();
    Complex s(prec);
    for (long g = 0; g < G.order(); ++g)
        s += Complex::root_of_unity(chi.value_exponent(g), chi.value_modulus(), prec) * Real(v[g], prec);
    return s;
}

/// Leading coefficient at s = 0: the value when r(chi) = 0, the derivative when r(chi) = 1.
inline Complex leading_coefficient(const Character& chi, long r, const PlaceSet& P, const PrecisionContext& ctx) {
    if (r == 0) return l_value_at_0(chi, P).embed(1, ctx.working_bits());
    if (r == 1) return l_deriv_at_0(chi, P, ctx);
    throw UnsupportedError("leading coefficients only for r(chi) <= 1");
}

/// The two characters of G = H x <c> restricting to chi on H: chi(c) = +1 (even) and -1 (odd).
/// Returned as characters of the full cyclotomic group of the same conductor.
inline std::pair<Character, Character> extend_to_full(const Character& chi, const FieldModel& Krel, const GroupPtr& full) {
    const auto& H = *Krel.group();
    long f = Krel.conductor();
    Character even, odd;
    bool fe = false, fo = false;
    for (auto& psi : characters(full)) {
        if (fe && fo) break;
        long M = lcm_l(lcm_l(chi.value_modulus(), psi.value_modulus()), 2);
        bool match_even = true, match_odd = true;
        for (long a = 1; a < f && (match_even || match_odd); ++a) {
            if (std::gcd(a, f) != 1) continue;
            bool inH = Krel.in_ambient(a);
            long w = chi.value_exponent(H.from_label(inH ? a : f - a)) * (M / chi.value_modulus());
            long g = psi.value_exponent(full->from_label(a)) * (M / psi.value_modulus());
            if (mod_pos(g - w, M) != 0) match_even = false;
            if (mod_pos(g - w - (inH ? 0 : M / 2), M) != 0) match_odd = false;
        }
        if (match_even && !fe) even = psi, fe = true;
        if (match_odd && !fo) odd = psi, fo = true;
    }
    if (!fe || !fo) throw MathError("internal: no extension of a character of H");
    return {even, odd};
}

/// L'_{K/k,S}(0, chi) = L'_{K/Q,S}(0, chi_even) L_{K/Q,S}(0, chi_odd) for the relative field.
inline Complex relative_l_deriv_at_0(const Character& chi, const FieldModel& Krel, const PlaceSet& Pfull,
                                     const std::vector<Real>& full_derivs, int prec) {
    auto [ev, od] = extend_to_full(chi, Krel, Pfull.group());
    return l_deriv_at_0(ev, full_derivs, prec) * l_value_at_0(od, Pfull).embed(1, prec);
}

/// zeta'_{K/k,S}(0, tau) for tau in H, from the relative L-derivatives.
inline std::vector<Real> relative_partial_zeta0_derivs(const FieldModel& Krel, const PrecisionContext& ctx) {
    int prec = ctx.working_bits();
    long f = Krel.conductor();
    PlaceSet Pfull = PlaceSet::ramified(FieldModel::full(f));
    auto full_derivs = partial_zeta0_derivs(Pfull, ctx);
    const auto& h = Krel.group();
    std::vector<Complex> L;
    auto chars = characters(h);
    for (auto& chi : chars) L.push_back(relative_l_deriv_at_0(chi, Krel, Pfull, full_derivs, prec));
    std::vector<Real> out;
    for (long t = 0; t < h->order(); ++t) {
        Complex s(prec);
        for (size_t c = 0; c < chars.size(); ++c)
            s += Complex::root_of_unity(-chars[c].value_exponent(t), chars[c].value_modulus(), prec) * L[c];
        out.push_back(s.re / h->order());
    }
    return out;
}

}  // namespace fgi
