#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "fgi/gring/character.hpp"
#include "fgi/gring/integer_matrix.hpp"

namespace fgi {

enum class BaseField { rational, imaginary_quadratic };

/// K inside Q(zeta_f) as the fixed field of H_K, over a base k whose Galois group
/// Gal(Q(zeta_f)/k) is the ambient residue group (all of (Z/f)^x when k = Q).
class FieldModel {
   public:
    FieldModel() = default;

    /// K = Q(zeta_f)^{H_K} over Q.
    static FieldModel make(long f, std::vector<long> kernel) {
        if (f < 3) throw MathError("conductor must be at least 3");
        std::vector<long> all;
        for (long a = 1; a < f; ++a)
            if (std::gcd(a, f) == 1) all.push_back(a);
        return FieldModel(f, all, std::move(kernel), BaseField::rational, 0);
    }
    static FieldModel full(long f) { return make(f, {1}); }
    static FieldModel plus(long f) { return make(f, {1, f - 1}); }
    /// Q(zeta_{p^n}) over k = Q(sqrt(-p)), p = 3 mod 4: G = H = squares in (Z/p^n)^x.
    static FieldModel relative(long p, long n) {
        if (!is_prime(p) || p % 4 != 3) throw MathError("relative case needs a prime p = 3 mod 4");
        long f = 1;
        for (long i = 0; i < n; ++i) f *= p;
        std::set<long> sq;
        for (long a = 1; a < f; ++a)
            if (a % p) sq.insert(a * a % f);
        return FieldModel(f, {sq.begin(), sq.end()}, {1}, BaseField::imaginary_quadratic, p);
    }

    long conductor() const { return f_; }
    const GroupPtr& group() const { return g_; }
    BaseField base() const { return base_; }
    /// The ramified prime of the imaginary quadratic base (0 for base Q).
    long base_prime() const { return base_p_; }
    const std::vector<long>& ambient() const { return ambient_; }
    const std::vector<long>& kernel() const { return kernel_; }
    bool in_kernel(long a) const { return std::binary_search(kernel_.begin(), kernel_.end(), mod_pos(a, f_)); }
    bool in_ambient(long a) const { return std::binary_search(ambient_.begin(), ambient_.end(), mod_pos(a, f_)); }

    long degree_over_q() const { return euler_phi(f_) / static_cast<long>(kernel_.size()); }
    bool is_totally_real() const { return in_kernel(f_ - 1); }
    /// Complex conjugation is a nontrivial element of G.
    bool contains_complex_conjugation() const { return in_ambient(f_ - 1) && !in_kernel(f_ - 1); }
    long complex_conjugation() const {
        if (!contains_complex_conjugation()) throw MathError("complex conjugation is not a nontrivial element of G");
        return g_->from_label(f_ - 1);
    }
    /// sigma_a for a residue in the ambient group.
    long sigma(long a) const { return g_->from_label(a); }

    std::string describe() const {
        std::string s = "Q(zeta_" + std::to_string(f_) + ")";
        if (kernel_.size() > 1) {
            s += "^<";
            for (size_t i = 0; i < kernel_.size(); ++i) s += (i ? "," : "") + std::to_string(kernel_[i]);
            s += ">";
        }
        if (base_ == BaseField::imaginary_quadratic) s += " / Q(sqrt(-" + std::to_string(base_p_) + "))";
        return s;
    }

   private:
    FieldModel(long f, std::vector<long> ambient, std::vector<long> kernel, BaseField base, long bp)
        : f_(f), base_(base), base_p_(bp) {
        auto G = FinAbGroup::quotient(f, ambient, kernel);  // validates subgroup conditions
        for (auto* v : {&ambient, &kernel}) {
            for (auto& a : *v) a = mod_pos(a, f);
            std::sort(v->begin(), v->end());
            v->erase(std::unique(v->begin(), v->end()), v->end());
        }
        ambient_ = std::move(ambient);
        kernel_ = std::move(kernel);
        g_ = make_group(std::move(G));
    }

    long f_ = 0;
    BaseField base_ = BaseField::rational;
    long base_p_ = 0;
    std::vector<long> ambient_, kernel_;
    GroupPtr g_;
};

/// A place of the base field: the infinite place or the place above a rational prime q.
struct BasePlace {
    long q = 0;  // 0 = infinite place
    bool infinite() const { return q == 0; }
    std::string name() const { return infinite() ? "inf" : std::to_string(q); }
};

/// S_K: places of K above a finite set S of base places, with decomposition groups.
class PlaceSet {
   public:
    struct Place {
        long base;  // index into base places
        long rep;   // group element tau with this place = tau w_v
    };

    PlaceSet() = default;
    /// S = {inf} and the given rational primes (for an imaginary quadratic base, only its ramified prime).
    PlaceSet(FieldModel K, std::vector<long> primes) : K_(std::move(K)) {
        std::sort(primes.begin(), primes.end());
        primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
        base_.push_back({0});
        for (long q : primes) {
            if (!is_prime(q)) throw MathError("place label " + std::to_string(q) + " is not a prime");
            if (K_.base() == BaseField::imaginary_quadratic && q != K_.base_prime())
                throw UnsupportedError("relative case supports only the ramified prime of the base");
            base_.push_back({q});
        }
        const auto& G = *K_.group();
        for (size_t v = 0; v < base_.size(); ++v) {
            std::vector<long> D;
            for (long a : decomposition_residues(base_[v].q))
                if (K_.in_ambient(a)) D.push_back(G.from_label(a));
            D = G.generated_subgroup(D);
            decomp_.push_back(D);
            std::vector<long> seen(G.order(), 0);
            for (long t = 0; t < G.order(); ++t) {
                if (seen[t]) continue;
                for (long d : D) seen[G.mul(t, d)] = 1;
                places_.push_back({static_cast<long>(v), t});
            }
        }
    }
    /// S = {inf} and the primes dividing the conductor.
    static PlaceSet ramified(const FieldModel& K) {
        if (K.base() == BaseField::imaginary_quadratic) return PlaceSet(K, {K.base_prime()});
        return PlaceSet(K, prime_divisors(K.conductor()));
    }

    const FieldModel& field() const { return K_; }
    const GroupPtr& group() const { return K_.group(); }
    const std::vector<BasePlace>& base_places() const { return base_; }
    const std::vector<long>& decomposition_group(long v) const { return decomp_.at(v); }
    const std::vector<Place>& places() const { return places_; }
    long num_places() const { return static_cast<long>(places_.size()); }

    bool contains_prime(long q) const {
        for (auto& b : base_)
            if (b.q == q) return true;
        return false;
    }
    /// S contains every prime dividing the conductor.
    bool contains_ramified() const {
        for (long q : prime_divisors(K_.conductor()))
            if (!contains_prime(q)) return false;
        return true;
    }

    /// Index of the place tau w_v.
    long place_index(long v, long tau) const {
        const auto& G = *group();
        for (size_t i = 0; i < places_.size(); ++i) {
            if (places_[i].base != v) continue;
            long rinv = G.inv(places_[i].rep);
            for (long d : decomp_[v])
                if (G.mul(rinv, tau) == d) return static_cast<long>(i);
        }
        throw MathError("internal: place not found");
    }
    /// sigma applied to place i.
    long act(long sigma, long i) const {
        return place_index(places_.at(i).base, group()->mul(sigma, places_.at(i).rep));
    }
    /// The distinguished place w_v (identity coset).
    long distinguished(long v) const { return place_index(v, 0); }

    bool is_complex_place(long i) const { return base_.at(places_.at(i).base).infinite() && !K_.is_totally_real(); }

    std::string place_name(long i) const {
        const auto& p = places_.at(i);
        std::string s = "w_" + base_[p.base].name();
        if (p.rep != 0) s = group()->element_name(p.rep) + "." + s;
        return s;
    }

   private:
    /// Residues of (Z/f)^x in the decomposition group of q (q = 0: complex conjugation).
    std::vector<long> decomposition_residues(long q) const {
        long f = K_.conductor();
        if (q == 0) return {1, f - 1};
        long m = f;
        while (m % q == 0) m /= q;
        std::set<long> pw{1 % m};
        for (long x = q % m; !pw.count(x); x = x * q % m) pw.insert(x);
        std::vector<long> out;
        for (long a = 1; a < f; ++a)
            if (std::gcd(a, f) == 1 && pw.count(a % m)) out.push_back(a);
        return out;
    }

    FieldModel K_;
    std::vector<BasePlace> base_;
    std::vector<std::vector<long>> decomp_;
    std::vector<Place> places_;
};

/// r(chi) = sum_v [chi trivial on D_v] - [chi trivial].
inline long r_of_chi(const Character& chi, const PlaceSet& P) {
    long r = chi.is_trivial() ? -1 : 0;
    for (size_t v = 0; v < P.base_places().size(); ++v)
        if (chi.trivial_on(P.decomposition_group(static_cast<long>(v)))) ++r;
    return r;
}

/// X = degree-zero part of Z[S_K], basis w_i - w_0 (i >= 1), with G-action matrices.
class XLattice {
   public:
    explicit XLattice(const PlaceSet& P) : P_(&P) {}
    long rank() const { return P_->num_places() - 1; }

    /// Matrix of sigma on the basis (columns = images of basis vectors).
    IntMatrix action(long sigma) const {
        long n = rank();
        IntMatrix M(n, n);
        long s0 = P_->act(sigma, 0);
        for (long i = 1; i <= n; ++i) {
            long si = P_->act(sigma, i);
            if (si != 0) M(si - 1, i - 1) += 1;
            if (s0 != 0) M(s0 - 1, i - 1) -= 1;
        }
        return M;
    }
    /// Character of X tensor C: trace(sigma) = #fixed places - 1.
    long trace(long sigma) const {
        long fixed = 0;
        for (long i = 0; i < P_->num_places(); ++i)
            if (P_->act(sigma, i) == i) ++fixed;
        return fixed - 1;
    }
    /// <chi, chi_X> computed from traces.
    long multiplicity(const Character& chi) const {
        const auto& G = *P_->group();
        long E = G.exponent();
        CyclotomicNumber s = CyclotomicNumber::zero(E);
        for (long g = 0; g < G.order(); ++g) s = s + chi.value(G.inv(g)) * Rational(trace(g));
        if (!s.is_rational()) throw MathError("internal: non-rational multiplicity");
        Rational m = s.rational_value() / G.order();
        if (m.get_den() != 1) throw MathError("internal: non-integral multiplicity");
        return m.get_num().get_si();
    }

   private:
    const PlaceSet* P_;
};

}  // namespace fgi
