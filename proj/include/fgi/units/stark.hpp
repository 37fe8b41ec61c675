#pragma once

#include <string>
#include <vector>

#include "fgi/lfun/lvalues.hpp"
#include "fgi/units/unit_lattice.hpp"

namespace fgi {

struct StarkResidual {
    long sigma;    // group element
    Real log_norm;  // log ||eps||_{sigma w}
    Real target;    // -e zeta'_S(0, sigma^{-1})
    Real residual;
};

struct StarkResult {
    bool pass = false;
    std::vector<StarkResidual> residuals;
    Real max_residual;
    bool uv_condition = false;
    std::string uv_case;
    std::string message;
};

/// zeta'_S(0, sigma) for every sigma, over Q or for the relative field.
inline std::vector<Real> stark_zeta_derivs(const PlaceSet& P, const PrecisionContext& ctx) {
    if (P.field().base() == BaseField::imaginary_quadratic) return relative_partial_zeta0_derivs(P.field(), ctx);
    return partial_zeta0_derivs(P, ctx);
}

/// Check log ||eps||_{sigma w} = -e zeta'_S(0, sigma^{-1}) for all sigma, and the off-v condition on eps.
/// w is the place tau w_v for the first (infinite) base place; its decomposition group must be trivial.
inline StarkResult verify_stark(const PlaceSet& P, const SUnit& eps, long e, const PrecisionContext& ctx,
                                const std::vector<Real>& zeta_derivs, long tau = 0) {
    ctx.validate();
    const auto& G = *P.group();
    if (P.decomposition_group(0).size() != 1)
        throw MathError("verify_stark: the place w must have trivial decomposition group");
    if (!eps.lies_in(P.field())) throw MathError("verify_stark: eps does not lie in K");
    int prec = ctx.working_bits();
    Real tol = tolerance(ctx);
    StarkResult res;
    res.max_residual = Real(prec);
    for (long s = 0; s < G.order(); ++s) {
        long i = P.place_index(0, G.mul(s, tau));
        Real ln = norm_at_place(eps, P, i, ctx);
        Real target = zeta_derivs.at(G.inv(s)) * (-e);
        Real r = abs(ln - target);
        if (r > res.max_residual) res.max_residual = r;
        res.residuals.push_back({s, ln, target, r});
    }
    // off-v places: (a) eps is a unit there when #S > 2, (b) all absolute values agree when #S = 2
    std::vector<Real> off;
    for (long i = 0; i < P.num_places(); ++i)
        if (P.places()[i].base != 0) off.push_back(norm_at_place(eps, P, i, ctx));
    res.uv_condition = true;
    if (P.base_places().size() > 2) {
        res.uv_case = "a";
        for (auto& x : off)
            if (abs(x) > tol) res.uv_condition = false;
    } else {
        res.uv_case = "b";
        for (auto& x : off)
            if (abs(x - off.front()) > tol) res.uv_condition = false;
    }
    res.pass = res.max_residual < tol && res.uv_condition;
    res.message = "max residual " + res.max_residual.to_string(6);
    if (!res.uv_condition) res.message += "; off-v condition (" + res.uv_case + ") fails";
    return res;
}

inline StarkResult verify_stark(const PlaceSet& P, const SUnit& eps, long e, const PrecisionContext& ctx) {
    return verify_stark(P, eps, e, ctx, stark_zeta_derivs(P, ctx));
}

/// The Stark element of a supported shape: epsilon for the real subfield, (1 - zeta)^{e theta~} for the relative field.
inline SUnit stark_element(const PlaceSet& P) {
    auto E = stark_module(P);
    if (P.field().kernel() == std::vector<long>{1} && P.field().base() == BaseField::rational)
        throw UnsupportedError("the full cyclotomic field has odd characters with r = 0; no Stark element");
    return E.gens.at(0);
}

}  // namespace fgi
