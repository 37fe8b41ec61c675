#pragma once

#include <vector>

#include "fgi/gring/group_ring.hpp"
#include "fgi/gring/lattice.hpp"

namespace fgi {

inline std::vector<Rational> coords_of(const QG& x) { return x.coeffs(); }

/// Full-rank Z[G]-stable lattice in Q[G] (a fractional ideal), in canonical form.
class IdealLattice {
   public:
    IdealLattice() = default;
    IdealLattice(GroupPtr g, QLattice L) : g_(std::move(g)), L_(std::move(L)) {
        if (L_.dim() != g_->order()) throw MathError("lattice dimension differs from group order");
        if (L_.rank() != L_.dim()) throw MathError("ideal lattice is not of full rank");
    }

    /// Z[G]-span of the generators.
    static IdealLattice from_generators(const GroupPtr& g, const std::vector<QG>& gens) {
        return IdealLattice(g, span(g, gens));
    }
    static IdealLattice whole(const GroupPtr& g) { return from_generators(g, {qg_one(g)}); }

    /// Z[G]-span as a lattice of arbitrary rank.
    static QLattice span(const GroupPtr& g, const std::vector<QG>& gens) {
        std::vector<std::vector<Rational>> vs;
        for (auto& x : gens) {
            require_same_group(g, x.group());
            for (long s = 0; s < g->order(); ++s) vs.push_back(x.shifted(s).coeffs());
        }
        return QLattice::from_vectors(g->order(), vs);
    }

    const GroupPtr& group() const { return g_; }
    const QLattice& lattice() const { return L_; }
    const Integer& denominator() const { return L_.denominator(); }
    /// Integer basis columns of d * lattice.
    std::vector<std::vector<Integer>> basis() const { return L_.numerator().basis(); }
    std::vector<QG> basis_elements() const {
        std::vector<QG> out;
        for (auto& v : L_.basis_vectors()) out.emplace_back(g_, v);
        return out;
    }

    bool contains(const QG& x) const {
        require_same_group(g_, x.group());
        return L_.contains(x.coeffs());
    }
    bool contains(const IdealLattice& o) const {
        require_same_group(g_, o.g_);
        return L_.contains(o.L_);
    }
    /// Z[G]-stability, checked on the basis.
    bool is_stable() const {
        for (auto& b : basis_elements())
            for (long j = 0; j < g_->rank(); ++j)
                if (!contains(b.shifted(g_->generator(j)))) return false;
        return true;
    }
    bool is_integral() const { return denominator() == 1; }

    IdealLattice scaled(const QG& a) const {
        std::vector<QG> gens;
        for (auto& b : basis_elements()) gens.push_back(a * b);
        return IdealLattice(g_, QLattice::from_vectors(g_->order(), to_vectors(gens)));
    }
    IdealLattice scaled(const Rational& q) const { return IdealLattice(g_, L_.scaled(q)); }
    /// a * lattice without the full-rank requirement (a may be a zero divisor).
    QLattice image_under(const QG& a) const {
        std::vector<QG> gens;
        for (auto& b : basis_elements()) gens.push_back(a * b);
        return QLattice::from_vectors(g_->order(), to_vectors(gens));
    }

    friend IdealLattice operator*(const IdealLattice& a, const IdealLattice& b) {
        require_same_group(a.g_, b.g_);
        std::vector<QG> gens;
        auto bb = b.basis_elements();
        for (auto& x : a.basis_elements())
            for (auto& y : bb) gens.push_back(x * y);
        return IdealLattice(a.g_, QLattice::from_vectors(a.g_->order(), to_vectors(gens)));
    }
    friend IdealLattice operator+(const IdealLattice& a, const IdealLattice& b) {
        require_same_group(a.g_, b.g_);
        return IdealLattice(a.g_, a.L_ + b.L_);
    }
    friend IdealLattice intersect(const IdealLattice& a, const IdealLattice& b) {
        require_same_group(a.g_, b.g_);
        return IdealLattice(a.g_, intersect(a.L_, b.L_));
    }
    IdealLattice intersect_integral() const { return intersect(*this, whole(g_)); }

    /// Image under the surjection G -> target given by an element map.
    IdealLattice project(const std::vector<long>& map, const GroupPtr& target) const {
        std::vector<QG> gens;
        for (auto& b : basis_elements()) gens.push_back(push_forward(b, map, target));
        return from_generators(target, gens);
    }

    friend bool operator==(const IdealLattice& a, const IdealLattice& b) {
        return *a.g_ == *b.g_ && a.L_ == b.L_;
    }

   private:
    static std::vector<std::vector<Rational>> to_vectors(const std::vector<QG>& xs) {
        std::vector<std::vector<Rational>> vs;
        for (auto& x : xs) vs.push_back(x.coeffs());
        return vs;
    }

    GroupPtr g_;
    QLattice L_;
};

/// Push a Z[G]-stable lattice of any rank forward along an element map and take the Z[target]-span.
inline IdealLattice push_forward_span(const GroupPtr& g, const QLattice& L, const std::vector<long>& map,
                                      const GroupPtr& target) {
    std::vector<QG> gens;
    for (auto& v : L.basis_vectors()) gens.push_back(push_forward(QG(g, v), map, target));
    return IdealLattice::from_generators(target, gens);
}

}  // namespace fgi
