#pragma once

#include <vector>

#include "fgi/cyclo/cyclotomic.hpp"
#include "fgi/gring/character.hpp"

namespace fgi {

/// Dirichlet character mod f with values in mu_E: chi(a) = zeta_E^{v[a]}, v[a] = -1 when gcd(a, f) > 1.
class DirichletCharacter {
   public:
    DirichletCharacter() = default;
    DirichletCharacter(long f, long E, std::vector<long> v) : f_(f), E_(E), v_(std::move(v)) {
        if (static_cast<long>(v_.size()) != f_) throw MathError("Dirichlet character table has wrong length");
    }

    /// Inflation of a character of a group with residue labels mod f (every unit residue must lie in the group).
    static DirichletCharacter inflate(const Character& chi) {
        const auto& G = *chi.group();
        long f = G.conductor();
        std::vector<long> v(f, -1);
        for (long a = 0; a < f; ++a)
            if (std::gcd(a, f) == 1) v[a] = chi.value_exponent(G.from_label(a));
        return DirichletCharacter(f, chi.value_modulus(), v);
    }
    /// Inflation through an explicit residue -> exponent rule.
    template <class Fn>
    static DirichletCharacter from_rule(long f, long E, Fn&& exponent_of) {
        std::vector<long> v(f, -1);
        for (long a = 0; a < f; ++a)
            if (std::gcd(a, f) == 1) v[a] = mod_pos(exponent_of(a), E);
        return DirichletCharacter(f, E, v);
    }

    long modulus() const { return f_; }
    long value_modulus() const { return E_; }
    /// Exponent of chi(a), or -1 if chi(a) = 0.
    long exponent(long a) const { return v_[mod_pos(a, f_)]; }
    CyclotomicNumber value(long a) const {
        long e = exponent(a);
        return e < 0 ? CyclotomicNumber::zero(E_) : CyclotomicNumber::zeta_power(E_, e);
    }
    bool is_trivial() const {
        for (long e : v_)
            if (e > 0) return false;
        return true;
    }
    bool is_even() const { return f_ <= 2 || exponent(f_ - 1) == 0; }

    /// Smallest d | f such that chi is trivial on residues = 1 mod d.
    long conductor() const {
        for (long d = 1; d <= f_; ++d) {
            if (f_ % d) continue;
            bool ok = true;
            for (long a = 1; a < f_ && ok; a += d)
                if (std::gcd(a, f_) == 1 && v_[a] != 0) ok = false;
            if (ok) return d;
        }
        return f_;
    }
    /// The primitive character inducing this one.
    DirichletCharacter primitive() const {
        long d = conductor();
        std::vector<long> v(d, -1);
        if (d == 1) return DirichletCharacter(1, E_, {0});
        for (long b = 0; b < d; ++b) {
            if (std::gcd(b, d) != 1) continue;
            for (long a = b; a < f_; a += d)
                if (std::gcd(a, f_) == 1) {
                    v[b] = v_[a];
                    break;
                }
        }
        return DirichletCharacter(d, E_, v);
    }

   private:
    long f_ = 1, E_ = 1;
    std::vector<long> v_{0};
};

/// B_{1,chi} = f^{-1} sum_{a=1}^{f} chi(a) a for a primitive nontrivial character.
inline CyclotomicNumber bernoulli_b1(const DirichletCharacter& chi) {
    long f = chi.modulus(), E = chi.value_modulus();
    if (chi.conductor() != f) throw MathError("bernoulli_b1 needs a primitive character");
    std::vector<Rational> acc(E, Rational(0));
    for (long a = 1; a <= f; ++a) {
        long e = chi.exponent(a);
        if (e >= 0) acc[e] += make_rational(a, f);
    }
    return CyclotomicNumber::from_coeffs(E, std::move(acc));
}

}  // namespace fgi
