#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fgi/units/quotient.hpp"

namespace fgi {

using json = nlohmann::json;

inline json field_to_json(const FieldModel& K) {
    json j;
    j["conductor"] = K.conductor();
    if (K.base() == BaseField::imaginary_quadratic) {
        j["base"] = "imaginary_quadratic";
        j["base_prime"] = K.base_prime();
    } else {
        j["base"] = "Q";
        j["kernel"] = K.kernel();
    }
    return j;
}

inline FieldModel field_from_json(const json& j) {
    try {
        long f = j.at("conductor").get<long>();
        std::string base = j.value("base", "Q");
        if (base == "imaginary_quadratic") {
            long p = j.value("base_prime", 0L);
            long n = 0;
            for (long m = f; m > 1 && p > 1 && m % p == 0; m /= p) ++n;
            if (p < 3 || ipow(p, n) != f) throw InputError("relative field: conductor must be a power of base_prime");
            return FieldModel::relative(p, n);
        }
        if (base != "Q") throw InputError("unknown base field '" + base + "'");
        return FieldModel::make(f, j.at("kernel").get<std::vector<long>>());
    } catch (const json::exception& e) {
        throw InputError(std::string("bad field descriptor: ") + e.what());
    } catch (const MathError& e) {
        throw InputError(std::string("bad field descriptor: ") + e.what());
    }
}

inline json rational_to_json(const Rational& q) { return q.get_str(); }

inline Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw InputError("rational must be a string like \"3/4\" or an integer");
    Rational q;
    if (q.set_str(j.get<std::string>(), 10) != 0) throw InputError("bad rational '" + j.get<std::string>() + "'");
    q.canonicalize();
    return q;
}

inline json sunit_to_json(const SUnit& u) {
    json j;
    if (u.is_word()) {
        json w;
        w["sign"] = u.sign_exponent();
        w["zeta"] = u.zeta_exponent();
        w["symbols"] = json::array();
        for (auto& [a, e] : u.symbols()) w["symbols"].push_back({a, e});
        j["word"] = w;
    } else {
        json c = json::array();
        CyclotomicNumber x = u.expand();
        for (auto& q : x.coeffs()) c.push_back(rational_to_json(q));
        j["coeffs"] = c;
    }
    return j;
}

inline SUnit sunit_from_json(const json& j, long f) {
    try {
        if (j.contains("word")) {
            const auto& w = j.at("word");
            SUnit u = SUnit::minus_one(f).pow(w.value("sign", 0L)) * SUnit::zeta(f, w.value("zeta", 0L));
            for (auto& s : w.value("symbols", json::array())) {
                long a = s.at(0).get<long>(), e = s.at(1).get<long>();
                if (std::gcd(a, f) == f) throw InputError("symbol 1 - zeta^" + std::to_string(a) + " is zero");
                u = u * SUnit::one_minus_zeta(f, a, e);
            }
            return u;
        }
        if (j.contains("coeffs")) {
            std::vector<Rational> c;
            for (auto& x : j.at("coeffs")) c.push_back(rational_from_json(x));
            // power basis zeta^0..zeta^{phi(f)-1}; longer vectors up to f are reduced mod Phi_f
            if (c.empty() || static_cast<long>(c.size()) > f)
                throw InputError("coefficient vector must have length 1.." + std::to_string(f));
            return SUnit::from_element(CyclotomicNumber::from_coeffs(f, c));
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("bad unit entry: ") + e.what());
    }
    throw InputError("unit entry needs 'word' or 'coeffs'");
}

/// A unit x is accepted as an S-unit when it lies in K and its norm to Q is supported on S.
inline bool norm_supported_on(const SUnit& u, const PlaceSet& P) {
    if (u.is_word()) {
        // 1 - zeta^a is a unit away from the primes dividing f
        for (auto& [a, e] : u.symbols()) {
            (void)e;
            long ord = u.conductor() / std::gcd(a, u.conductor());
            for (long q : prime_divisors(ord))
                if (!P.contains_prime(q)) return false;
        }
        return true;
    }
    Rational n = cyc_norm(u.expand());
    for (Integer m : {Integer(n.get_num()), Integer(n.get_den())}) {
        m = abs(m);
        for (auto& v : P.base_places())
            if (!v.infinite())
                while (mpz_divisible_ui_p(m.get_mpz_t(), v.q)) m /= v.q;
        if (m != 1) return false;
    }
    return true;
}

inline json unit_lattice_to_json(const UnitLattice& U) {
    json j;
    j["format"] = "fgi-units-1";
    j["field"] = field_to_json(U.field());
    json S = json::array();
    for (auto& v : U.places.base_places())
        if (!v.infinite()) S.push_back(v.q);
    j["primes"] = S;
    j["torsion"] = sunit_to_json(U.torsion);
    j["torsion_order"] = U.torsion_order;
    j["units"] = json::array();
    for (auto& u : U.gens) j["units"].push_back(sunit_to_json(u));
    j["provenance"] = U.note.empty() ? to_string(U.provenance) : to_string(U.provenance) + ": " + U.note;
    return j;
}

/// Parse and validate: units lie in K, have norm supported on S, the torsion has the stated order,
/// and the free part has the expected rank with independent log vectors.
inline UnitLattice unit_lattice_from_json(const json& j, const PrecisionContext& ctx) {
    if (j.value("format", "") != "fgi-units-1") throw InputError("unit file: missing or unknown format tag");
    if (!j.contains("provenance") || !j["provenance"].is_string() || j["provenance"].get<std::string>().empty())
        throw InputError("unit file: a provenance string is required");
    FieldModel K = field_from_json(j.at("field"));
    UnitLattice U;
    try {
        U.places = PlaceSet(K, j.value("primes", std::vector<long>{}));
    } catch (const Error& e) {
        throw InputError(std::string("unit file: bad prime set: ") + e.what());
    }
    long f = K.conductor();
    U.provenance = UnitProvenance::ingested;
    U.note = j["provenance"].get<std::string>();
    U.torsion = j.contains("torsion") ? sunit_from_json(j["torsion"], f) : SUnit::minus_one(f);
    U.torsion_order = j.value("torsion_order", 2L);
    if (U.torsion_order < 1) throw InputError("unit file: torsion order must be positive");
    for (auto& x : j.at("units")) U.gens.push_back(sunit_from_json(x, f));
    for (size_t i = 0; i < U.gens.size(); ++i) {
        if (!U.gens[i].lies_in(K)) throw InputError("unit " + std::to_string(i) + " does not lie in K");
        if (!norm_supported_on(U.gens[i], U.places))
            throw InputError("unit " + std::to_string(i) + " is not an S-unit (norm has primes outside S)");
    }
    if (!U.torsion.lies_in(K)) throw InputError("torsion generator does not lie in K");
    auto [n, d] = U.torsion.pow(U.torsion_order).expand_fraction();
    if (!(n == d)) throw InputError("torsion generator does not have the stated order");
    for (long q : prime_divisors(U.torsion_order)) {
        auto [n2, d2] = U.torsion.pow(U.torsion_order / q).expand_fraction();
        if (n2 == d2) throw InputError("torsion generator has order smaller than stated");
    }
    try {
        UnitCoordinates C(U, ctx);  // rank and independence
    } catch (const MathError& e) {
        throw InputError(std::string("unit file: ") + e.what());
    }
    return U;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(what + ": " + e.what());
    }
}

/// Unit provider: builtin cyclotomic units or an ingested file.
inline UnitLattice sunit_group(const PlaceSet& P, const std::string& units_file, const PrecisionContext& ctx) {
    if (units_file.empty()) return sunit_group_builtin(P);
    auto U = unit_lattice_from_json(parse_json_text(read_text_file(units_file), units_file), ctx);
    if (U.conductor() != P.field().conductor() || !(*U.field().group() == *P.group()) ||
        U.places.num_places() != P.num_places())
        throw InputError("unit file describes a different field or place set");
    return U;
}

}  // namespace fgi
