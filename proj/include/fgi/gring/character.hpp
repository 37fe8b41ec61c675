#pragma once

#include <vector>

#include "fgi/cyclo/cyclotomic.hpp"
#include "fgi/gring/group.hpp"

namespace fgi {

/// One-dimensional character of a FinAbGroup, stored as an exponent tuple k:
/// chi(g_j) = zeta_{d_j}^{k_j} on the j-th generator.
class Character {
   public:
    Character() = default;
    Character(GroupPtr g, std::vector<long> k) : g_(std::move(g)), k_(std::move(k)) {
        if (k_.size() != g_->factors().size()) throw MathError("character exponent tuple has wrong length");
        for (size_t j = 0; j < k_.size(); ++j) k_[j] = mod_pos(k_[j], g_->factors()[j]);
    }
    static Character trivial(GroupPtr g) {
        std::vector<long> k(g->rank(), 0);
        return Character(std::move(g), k);
    }

    const GroupPtr& group() const { return g_; }
    const std::vector<long>& exponents() const { return k_; }
    /// Values lie in mu_E with E the group exponent.
    long value_modulus() const { return g_->exponent(); }

    /// chi(sigma) = zeta_E^{value_exponent(sigma)}.
    long value_exponent(long sigma) const {
        long E = g_->exponent();
        auto x = g_->coords(sigma);
        long s = 0;
        for (size_t j = 0; j < x.size(); ++j) s = (s + k_[j] * x[j] % g_->factors()[j] * (E / g_->factors()[j])) % E;
        return s;
    }
    CyclotomicNumber value(long sigma) const { return CyclotomicNumber::zeta_power(value_modulus(), value_exponent(sigma)); }
    /// Value as an element of Q(zeta_M); E must divide M.
    CyclotomicNumber value_in(long sigma, long M) const {
        long E = value_modulus();
        if (M % E != 0) throw MathError("character values do not lie in the requested cyclotomic field");
        return CyclotomicNumber::zeta_power(M, value_exponent(sigma) * (M / E));
    }

    bool is_trivial() const {
        for (long x : k_)
            if (x) return false;
        return true;
    }
    long order() const {
        long o = 1;
        for (size_t j = 0; j < k_.size(); ++j) {
            long d = g_->factors()[j];
            o = lcm_l(o, d / std::gcd(d, k_[j]));
        }
        return o;
    }
    Character conj() const {
        auto k = k_;
        for (auto& x : k) x = -x;
        return Character(g_, k);
    }
    /// Galois twist chi^tau for tau: zeta_E -> zeta_E^t.
    Character twist(long t) const {
        auto k = k_;
        for (auto& x : k) x *= t;
        return Character(g_, k);
    }
    Character operator*(const Character& o) const {
        require_same_group(g_, o.g_);
        auto k = k_;
        for (size_t j = 0; j < k.size(); ++j) k[j] += o.k_[j];
        return Character(g_, k);
    }
    /// chi(sigma) = 1.
    bool trivial_on(long sigma) const { return value_exponent(sigma) == 0; }
    bool trivial_on(const std::vector<long>& subgroup) const {
        for (long s : subgroup)
            if (!trivial_on(s)) return false;
        return true;
    }

    /// Position in characters(G).
    long index() const {
        long i = 0;
        for (size_t j = k_.size(); j-- > 0;) i = i * g_->factors()[j] + k_[j];
        return i;
    }

    friend bool operator==(const Character& a, const Character& b) { return a.k_ == b.k_ && *a.g_ == *b.g_; }

    std::string to_string() const {
        std::string s = "chi(";
        for (size_t j = 0; j < k_.size(); ++j) s += (j ? "," : "") + std::to_string(k_[j]);
        return s + ")";
    }

   private:
    GroupPtr g_;
    std::vector<long> k_;
};

/// All |G| characters, in lexicographic order of exponent tuples (last generator most significant).
inline std::vector<Character> characters(const GroupPtr& g) {
    std::vector<Character> out;
    out.reserve(g->order());
    for (long i = 0; i < g->order(); ++i) out.emplace_back(g, g->coords(i));
    return out;
}

}  // namespace fgi
