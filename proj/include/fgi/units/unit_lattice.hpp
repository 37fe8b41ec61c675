#pragma once

#include <string>
#include <vector>

#include "fgi/fields/sunit.hpp"
#include "fgi/lfun/lvalues.hpp"

namespace fgi {

/// Number of roots of unity in K = Q(zeta_f)^{H_K}.
inline long roots_of_unity_order(const FieldModel& K) {
    long f = K.conductor(), best = 1;
    for (long d = 1; d <= f; ++d) {
        if (f % d) continue;
        bool ok = true;
        for (long h : K.kernel())
            if ((h - 1) % d != 0) ok = false;
        if (ok) best = d;
    }
    return f % 2 ? 2 * best : best;
}

/// A generator of mu(K).
inline SUnit roots_of_unity_generator(const FieldModel& K) {
    long f = K.conductor(), e = roots_of_unity_order(K);
    if (f % 2) return SUnit::minus_one(f) * SUnit::zeta(f, 2 * f / e);
    return SUnit::zeta(f, f / e);
}

enum class UnitProvenance { builtin_cyclotomic_hplus1, stark, ingested };

inline std::string to_string(UnitProvenance p) {
    switch (p) {
        case UnitProvenance::builtin_cyclotomic_hplus1: return "builtin_cyclotomic_hplus1";
        case UnitProvenance::stark: return "stark";
        case UnitProvenance::ingested: return "ingested";
    }
    return "?";
}

/// A subgroup of O_{K,S}^x given by a torsion generator and a list of further generators.
/// For a full unit group the list is a basis modulo torsion; for a Stark module it is the
/// list of G-conjugates of the Stark element and need not be independent.
struct UnitLattice {
    PlaceSet places;
    SUnit torsion;
    long torsion_order = 1;
    std::vector<SUnit> gens;
    UnitProvenance provenance = UnitProvenance::builtin_cyclotomic_hplus1;
    std::string note;

    const FieldModel& field() const { return places.field(); }
    long conductor() const { return field().conductor(); }
    /// Expected rank of O_{K,S}^x modulo torsion.
    long expected_rank() const { return places.num_places() - 1; }
};

/// epsilon = (1 - zeta)(1 - zeta^{-1}) for zeta of order p^n.
inline SUnit stark_unit(long p, long n) {
    if (!is_prime(p) || p == 2 || n < 1) throw MathError("stark_unit needs an odd prime and n >= 1");
    long f = ipow(p, n);
    return SUnit::one_minus_zeta(f, 1) * SUnit::one_minus_zeta(f, -1);
}

/// xi_a = zeta^{(1-a)/2} (1 - zeta^a)/(1 - zeta).
inline SUnit cyclotomic_unit(long f, long a) {
    long half = mod_pos((1 - a) * inv_mod(2, f), f);
    return SUnit::zeta(f, half) * SUnit::one_minus_zeta(f, a) * SUnit::one_minus_zeta(f, 1, -1);
}

/// The residues 1 < a < f/2 prime to p.
inline std::vector<long> cyclotomic_unit_indices(long p, long n) {
    long f = ipow(p, n);
    std::vector<long> out;
    for (long a = 2; 2 * a < f; ++a)
        if (a % p) out.push_back(a);
    return out;
}

/// -1 followed by the xi_a.
inline std::vector<SUnit> cyclotomic_unit_gens(long p, long n) {
    long f = ipow(p, n);
    std::vector<SUnit> out{SUnit::minus_one(f)};
    for (long a : cyclotomic_unit_indices(p, n)) out.push_back(cyclotomic_unit(f, a));
    return out;
}

namespace detail {

/// (p, n) with f = p^n, p odd; throws otherwise.
inline std::pair<long, long> prime_power(long f) {
    auto ps = prime_divisors(f);
    if (ps.size() != 1 || ps[0] == 2) throw UnsupportedError("builtin unit data needs an odd prime-power conductor");
    long n = 0;
    for (long m = f; m > 1; m /= ps[0]) ++n;
    return {ps[0], n};
}

enum class Shape { plus, full, relative };

inline Shape shape_of(const PlaceSet& P) {
    const auto& K = P.field();
    long f = K.conductor();
    auto [p, n] = prime_power(f);
    (void)n;
    if (P.base_places().size() != 2 || P.base_places()[1].q != p)
        throw UnsupportedError("builtin unit data needs S = {inf, p}");
    if (K.base() == BaseField::imaginary_quadratic) return Shape::relative;
    if (K.kernel() == std::vector<long>{1}) return Shape::full;
    if (K.kernel() == std::vector<long>{1, f - 1}) return Shape::plus;
    throw UnsupportedError("builtin unit data covers Q(zeta_{p^n}), its real subfield and the relative case only");
}

}  // namespace detail

/// O_{K,S}^x from cyclotomic units, assuming h+(p^n) = 1.
inline UnitLattice sunit_group_builtin(const PlaceSet& P) {
    auto shape = detail::shape_of(P);
    long f = P.field().conductor();
    auto [p, n] = detail::prime_power(f);
    UnitLattice U;
    U.places = P;
    U.provenance = UnitProvenance::builtin_cyclotomic_hplus1;
    U.note = "assumes h+(" + std::to_string(f) + ") = 1";
    for (long a : cyclotomic_unit_indices(p, n)) U.gens.push_back(cyclotomic_unit(f, a));
    if (shape == detail::Shape::plus) {
        U.torsion = SUnit::minus_one(f);
        U.torsion_order = 2;
        U.gens.push_back(stark_unit(p, n));
    } else {
        U.torsion = SUnit::minus_one(f) * SUnit::zeta(f, 1);
        U.torsion_order = 2 * f;
        U.gens.push_back(SUnit::one_minus_zeta(f, 1));
    }
    if (static_cast<long>(U.gens.size()) != U.expected_rank())
        throw MathError("internal: builtin unit rank " + std::to_string(U.gens.size()) + " != #S_K - 1");
    return U;
}

/// Which torsion the relative Stark module carries.
enum class RelativeTorsion { zeta, mu };

/// The group of Stark units E: the Z[G]-span of mu-type torsion and the conjugates of a Stark element.
///   plus:     <-1; sigma(epsilon)>
///   full:     <sigma(1 - zeta)> (contains -zeta)
///   relative: <-zeta (or zeta); tau((1 - zeta)^{e theta~}), tau in H>
inline UnitLattice stark_module(const PlaceSet& P, RelativeTorsion rt = RelativeTorsion::mu) {
    auto shape = detail::shape_of(P);
    const auto& K = P.field();
    const auto& G = *K.group();
    long f = K.conductor();
    auto [p, n] = detail::prime_power(f);
    UnitLattice E;
    E.places = P;
    E.provenance = UnitProvenance::stark;
    SUnit base;
    if (shape == detail::Shape::plus) {
        E.torsion = SUnit::minus_one(f);
        E.torsion_order = 2;
        base = stark_unit(p, n);
    } else if (shape == detail::Shape::full) {
        E.torsion = SUnit::one(f);
        E.torsion_order = 1;
        base = SUnit::one_minus_zeta(f, 1);
    } else {
        long e = roots_of_unity_order(K);
        QG et = half_stickelberger(K) * Rational(e);
        if (!is_integral(et)) throw MathError("e * half Stickelberger element is not integral");
        base = SUnit::one(f);
        for (long s = 0; s < G.order(); ++s) {
            long c = et[s].get_num().get_si();
            if (c) base = base * SUnit::one_minus_zeta(f, G.label(s), c);
        }
        E.torsion = rt == RelativeTorsion::zeta ? SUnit::zeta(f, 1) : SUnit::minus_one(f) * SUnit::zeta(f, 1);
        E.torsion_order = rt == RelativeTorsion::zeta ? f : 2 * f;
        E.note = rt == RelativeTorsion::zeta ? "torsion <zeta>" : "torsion <-zeta>";
    }
    for (long s = 0; s < G.order(); ++s) E.gens.push_back(base.galois(G.label(s)));
    return E;
}

}  // namespace fgi
