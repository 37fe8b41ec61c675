#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fgi/units/quotient.hpp"
#include "fgi/units/stark.hpp"

namespace fgi {

enum class JRoute { theorem_j, full_cyclotomic, base_case };

inline std::string to_string(JRoute r) {
    switch (r) {
        case JRoute::theorem_j: return "theorem_j";
        case JRoute::full_cyclotomic: return "full_cyclotomic";
        case JRoute::base_case: return "base_case";
    }
    return "?";
}

struct JResult {
    std::string field;
    std::string places;
    JRoute route = JRoute::theorem_j;
    long e = 0;
    std::optional<IdealLattice> ideal;        // routes theorem_j and full_cyclotomic
    std::optional<IdealLattice> annihilator;  // ann(U/E) behind the ideal
    // base_case: J = Z * generator
    std::optional<Real> generator;
    std::optional<Real> generator_error;
    Rational expected;
    std::vector<std::string> assumptions;
};

inline std::string describe_places(const PlaceSet& P) {
    std::string s = "{";
    for (size_t i = 0; i < P.base_places().size(); ++i) s += (i ? "," : "") + P.base_places()[i].name();
    return s + "}";
}

/// Element maps between the groups of Q(zeta_p), its real subfield K+ and the relative field.
namespace gmaps {

/// G -> G+ (restriction).
inline std::vector<long> full_to_plus(const GroupPtr& g, const GroupPtr& gp) {
    std::vector<long> m(g->order());
    for (long s = 0; s < g->order(); ++s) m[s] = gp->from_label(g->label(s));
    return m;
}

/// G -> H from G = H x <c>: sigma_a goes to sigma_{+-a}, whichever lies in H.
inline std::vector<long> full_to_rel(const GroupPtr& g, const FieldModel& Krel) {
    const auto& h = Krel.group();
    long f = Krel.conductor();
    std::vector<long> m(g->order());
    for (long s = 0; s < g->order(); ++s) {
        long a = g->label(s);
        m[s] = h->from_label(Krel.in_ambient(a) ? a : f - a);
    }
    return m;
}

/// G+ -> H, inverse of restriction H -> G+.
inline std::vector<long> plus_to_rel(const GroupPtr& gp, const FieldModel& Krel) {
    const auto& h = Krel.group();
    long f = Krel.conductor();
    std::vector<long> m(gp->order());
    for (long s = 0; s < gp->order(); ++s) {
        long a = gp->label(s);
        m[s] = h->from_label(Krel.in_ambient(a) ? a : f - a);
    }
    return m;
}

/// H -> G (inclusion).
inline std::vector<long> rel_to_full(const FieldModel& Krel, const GroupPtr& g) {
    const auto& h = Krel.group();
    std::vector<long> m(h->order());
    for (long s = 0; s < h->order(); ++s) m[s] = g->from_label(h->label(s));
    return m;
}

}  // namespace gmaps

/// Throws naming the first character with r(chi) != 1.
inline void require_rank_one(const PlaceSet& P) {
    for (auto& chi : characters(P.group())) {
        long r = r_of_chi(chi, P);
        if (r != 1)
            throw UnsupportedError("theorem route needs r(chi) = 1 for all chi; r(" + chi.to_string() +
                                   ") = " + std::to_string(r));
    }
}

/// J = (1/e) ann(U/E) for a rank-one-everywhere field, from explicit unit data.
inline JResult j_via_theorem(const UnitLattice& U, const UnitLattice& E, const PrecisionContext& ctx) {
    const PlaceSet& P = U.places;
    require_rank_one(P);
    JResult res;
    res.field = P.field().describe();
    res.places = describe_places(P);
    res.route = JRoute::theorem_j;
    res.e = roots_of_unity_order(P.field());
    auto ann = quotient_module(U, E, ctx).annihilator();
    res.ideal = ann.scaled(make_rational(1, res.e));
    res.annihilator = ann;
    res.assumptions.push_back("units: " + to_string(U.provenance) + (U.note.empty() ? "" : " (" + U.note + ")"));
    res.assumptions.push_back("stark module: " + to_string(E.provenance) + (E.note.empty() ? "" : " (" + E.note + ")"));
    res.assumptions.push_back("r(chi) = 1 for all chi: checked");
    res.assumptions.push_back("precision: " + std::to_string(ctx.bits) + " bits");
    return res;
}

inline JResult j_via_theorem(const PlaceSet& P, const PrecisionContext& ctx,
                             RelativeTorsion rt = RelativeTorsion::mu) {
    require_rank_one(P);
    return j_via_theorem(sunit_group_builtin(P), stark_module(P, rt), ctx);
}

/// J for Q(zeta_{p^n})/Q, S = {inf, p}: generated by (1/2) alpha e+ + theta over alpha in ann(U/E),
/// E = Z[G](1 - zeta), together with theta itself.
inline JResult j_full_cyclotomic(long p, long n, const PrecisionContext& ctx) {
    if (!is_prime(p) || p == 2 || n < 1) throw InputError("j_full_cyclotomic needs an odd prime p and n >= 1");
    long f = ipow(p, n);
    PlaceSet P = PlaceSet::ramified(FieldModel::full(f));
    const auto& g = P.group();
    auto U = sunit_group_builtin(P);
    auto E = stark_module(P);
    auto ann = quotient_module(U, E, ctx).annihilator();
    QG theta = stickelberger(P);
    QG half_ep = e_plus(g, P.field().complex_conjugation()) * make_rational(1, 2);
    std::vector<QG> gens{theta};
    for (auto& a : ann.basis_elements()) gens.push_back(a * half_ep + theta);
    JResult res;
    res.field = P.field().describe();
    res.places = describe_places(P);
    res.route = JRoute::full_cyclotomic;
    res.e = roots_of_unity_order(P.field());
    res.ideal = IdealLattice::from_generators(g, gens);
    res.annihilator = ann;
    res.assumptions.push_back("units: " + to_string(U.provenance) + " (" + U.note + ")");
    res.assumptions.push_back("E = Z[G](1 - zeta)");
    res.assumptions.push_back("precision: " + std::to_string(ctx.bits) + " bits");
    return res;
}

/// J_{K/K, S_inf} = Z zeta*_K(0)/R_K for K = Q (d = 1) or Q(sqrt 5) (d = 5).
inline JResult j_base_case(long d, const PrecisionContext& ctx) {
    ctx.validate();
    int prec = ctx.working_bits();
    JResult res;
    res.route = JRoute::base_case;
    res.places = "{inf}";
    res.e = 2;
    res.expected = make_rational(-1, 2);  // -h/|mu| with h = 1, |mu| = 2
    if (d == 1) {
        res.field = "Q";
        res.generator = Real(make_rational(-1, 2), prec);
        res.generator_error = Real(0L, prec);
        res.assumptions.push_back("zeta_Q(0) = -1/2, R = 1");
        return res;
    }
    if (d != 5) throw UnsupportedError("base case available for Q and Q(sqrt 5) only");
    res.field = "Q(sqrt 5)";
    // zeta_K(s) = zeta(s) L(s, chi_5); chi_5 is the nontrivial character of Gal(Q(zeta_5)+/Q)
    PlaceSet P = PlaceSet::ramified(FieldModel::plus(5));
    auto derivs = partial_zeta0_derivs(P, ctx);
    Complex L1(prec);
    for (auto& chi : characters(P.group()))
        if (!chi.is_trivial()) L1 = l_deriv_at_0(chi, derivs, prec);
    Real golden = (Real(1L, prec) + sqrt(Real(5L, prec))) / Real(2L, prec);
    Real R = log(golden);
    Real zstar = L1.re * Real(make_rational(-1, 2), prec);
    res.generator = zstar / R;
    res.generator_error = abs(L1.im) + Real::pow2(-ctx.bits, prec);
    res.assumptions.push_back("zeta*_K(0) = zeta(0) L'(0, chi_5); chi_5 primitive of conductor 5, no Euler factor");
    res.assumptions.push_back("R_K = log((1 + sqrt 5)/2)");
    res.assumptions.push_back("precision: " + std::to_string(ctx.bits) + " bits");
    return res;
}

/// L*_S(0, chi) = L'_S(0, chi) for every chi (r(chi) = 1), indexed like characters(G).
inline std::vector<Complex> l_star_values(const PlaceSet& P, const PrecisionContext& ctx) {
    auto derivs = stark_zeta_derivs(P, ctx);
    std::vector<Complex> out;
    for (auto& chi : characters(P.group())) out.push_back(l_deriv_at_0(chi, derivs, ctx.working_bits()));
    return out;
}

/// I^f and the regulator for the twist f = u o f0, where f0 sends the Stark element to w' - w.
struct TwistData {
    QG u;
    IdealLattice I;                    // I^f = u^{-1} ann(U/E)
    std::vector<Complex> R;            // R^f_chi
    std::vector<Complex> ratio;        // R^f_chi / L*_S(0, chi)
    std::vector<Real> kphi_numeric;    // kappa(phi_G(R^f)), coefficients
    QG kphi;                           // its exact value e u^{-1}
    Real max_error;                    // |numeric - exact|
};

inline TwistData i_f_and_regulator(const PlaceSet& P, const QG& u, const PrecisionContext& ctx,
                                   const IdealLattice& ann, const std::vector<Complex>& lstar) {
    require_rank_one(P);
    const auto& g = P.group();
    int prec = ctx.working_bits();
    long e = roots_of_unity_order(P.field());
    QG uinv;
    try {
        uinv = qg_inverse(u);
    } catch (const MathError&) {
        throw InputError("twist " + to_string(u) + " is not invertible in Q[G]");
    }
    TwistData t;
    t.u = u;
    t.I = ann.scaled(uinv);
    SUnit eps = stark_element(P);
    std::vector<Real> ell;
    for (long s = 0; s < g->order(); ++s) ell.push_back(norm_at_place(eps, P, P.place_index(0, s), ctx));
    auto chars = characters(g);
    for (size_t c = 0; c < chars.size(); ++c) {
        // conj chi(rho) with rho = -sum_sigma log||eps||_{sigma w} sigma, divided by conj chi(u)
        auto cc = chars[c].conj();
        Complex rho(prec);
        for (long s = 0; s < g->order(); ++s)
            rho += Complex::root_of_unity(cc.value_exponent(s), cc.value_modulus(), prec) * (-ell[s]);
        Complex cu = chi_apply(u, cc).embed(1, prec);
        t.R.push_back(rho / cu);
        t.ratio.push_back(t.R.back() / lstar[c]);
    }
    // phi = sum_chi ratio_chi e_chi, then kappa
    long n = g->order();
    t.kphi_numeric.assign(n, Real(prec));
    for (long s = 0; s < n; ++s) {
        Complex acc(prec);
        for (size_t c = 0; c < chars.size(); ++c)
            acc += Complex::root_of_unity(chars[c].value_exponent(s), chars[c].value_modulus(), prec) * t.ratio[c];
        // coefficient of s^{-1} in phi, i.e. of s in kappa(phi)
        t.kphi_numeric[s] = acc.re / n;
    }
    t.kphi = uinv * Rational(e);
    t.max_error = Real(prec);
    for (long s = 0; s < n; ++s) {
        Real d = abs(t.kphi_numeric[s] - Real(t.kphi[s], prec));
        if (d > t.max_error) t.max_error = d;
    }
    return t;
}

inline TwistData i_f_and_regulator(const PlaceSet& P, const QG& u, const PrecisionContext& ctx) {
    require_rank_one(P);
    auto ann = quotient_module(sunit_group_builtin(P), stark_module(P, RelativeTorsion::mu), ctx).annihilator();
    return i_f_and_regulator(P, u, ctx, ann, l_star_values(P, ctx));
}

}  // namespace fgi
