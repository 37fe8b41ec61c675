#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fgi/cyclo/rational.hpp"
#include "fgi/error.hpp"

namespace fgi {

/// Finite abelian group Z/d_1 x ... x Z/d_k with d_1 | d_2 | ... | d_k.
///
/// Elements are indexed 0..order-1 in mixed radix (first coordinate fastest).
/// Groups built from a conductor f additionally carry residue labels: element i
/// is the class of label(i) in (ambient subgroup of (Z/f)^x) / H.
class FinAbGroup {
   public:
    FinAbGroup() { init_tables(); }

    static FinAbGroup from_factors(std::vector<long> d) {
        for (long x : d)
            if (x < 1) throw MathError("invariant factor must be positive");
        std::erase(d, 1);
        std::sort(d.begin(), d.end());
        for (size_t i = 0; i + 1 < d.size(); ++i)
            if (d[i + 1] % d[i] != 0) throw MathError("invariant factors must form a divisor chain");
        FinAbGroup g;
        g.d_ = std::move(d);
        g.init_tables();
        return g;
    }

    static FinAbGroup cyclic(long n) { return from_factors({n}); }

    /// (Z/f)^x with residue labels.
    static FinAbGroup units_mod(long f) {
        if (f < 3) throw MathError("units_mod requires f >= 3");
        std::vector<long> all;
        for (long a = 1; a < f; ++a)
            if (std::gcd(a, f) == 1) all.push_back(a);
        return quotient(f, all, {1});
    }

    /// A/H for subgroups H <= A <= (Z/f)^x given as residue lists.
    static FinAbGroup quotient(long f, std::vector<long> ambient, std::vector<long> kernel) {
        if (f < 1) throw MathError("conductor must be positive");
        for (auto* v : {&ambient, &kernel}) {
            for (long& a : *v) {
                a = mod_pos(a, f);
                if (std::gcd(a, f) != 1) throw MathError("residue not coprime to conductor");
            }
            std::sort(v->begin(), v->end());
            v->erase(std::unique(v->begin(), v->end()), v->end());
        }
        std::set<long> amb(ambient.begin(), ambient.end());
        for (long a : ambient)
            for (long b : ambient)
                if (!amb.count(a * b % f)) throw MathError("ambient residues do not form a group");
        for (long h : kernel)
            if (!amb.count(h)) throw MathError("kernel not contained in ambient group");
        for (long h : kernel)
            for (long k : kernel)
                if (!std::binary_search(kernel.begin(), kernel.end(), h * k % f))
                    throw MathError("kernel residues do not form a group");

        // canonical coset representative = smallest residue in the coset
        std::map<long, long> canon;
        for (long a : ambient) {
            long m = f;
            for (long h : kernel) m = std::min(m, a * h % f);
            canon[a] = m;
        }
        std::vector<long> cosets;
        for (auto& [a, c] : canon)
            if (a == c) cosets.push_back(a);
        auto mulc = [&](long a, long b) { return canon.at(a * b % f); };
        auto order_mod = [&](long a, const std::set<long>& sub) {
            long o = 1, x = a;
            while (!sub.count(x)) x = mulc(x, a), ++o;
            return o;
        };

        // greedy: an element of maximal order in the current quotient, lifted to one of the same order
        std::set<long> sub{canon.at(1)};
        std::vector<long> gens, ords;
        while (sub.size() < cosets.size()) {
            long bo = 0;
            for (long a : cosets) bo = std::max(bo, order_mod(a, sub));
            long pick = 0;
            for (long a : cosets)
                if (order_mod(a, sub) == bo && order_mod(a, {canon.at(1)}) == bo) {
                    pick = a;
                    break;
                }
            if (!pick) throw MathError("internal: no lift of maximal order");
            gens.push_back(pick);
            ords.push_back(bo);
            std::set<long> nsub;
            for (long s : sub) {
                long x = s;
                for (long k = 0; k < bo; ++k) nsub.insert(x), x = mulc(x, pick);
            }
            sub = std::move(nsub);
        }
        std::reverse(gens.begin(), gens.end());
        std::reverse(ords.begin(), ords.end());

        FinAbGroup g;
        g.d_ = ords;
        g.f_ = f;
        g.gen_labels_ = gens;
        g.init_tables();
        g.labels_.assign(g.n_, 0);
        std::map<long, long> canon_to_index;
        for (long i = 0; i < g.n_; ++i) {
            auto x = g.coords(i);
            long a = canon.at(1);
            for (size_t j = 0; j < x.size(); ++j)
                for (long t = 0; t < x[j]; ++t) a = mulc(a, gens[j]);
            g.labels_[i] = a;
            canon_to_index[a] = i;
        }
        for (auto& [a, c] : canon) g.residue_index_[a] = canon_to_index.at(c);
        return g;
    }

    long order() const { return n_; }
    long rank() const { return static_cast<long>(d_.size()); }
    const std::vector<long>& factors() const { return d_; }
    long exponent() const { return d_.empty() ? 1 : d_.back(); }

    std::vector<long> coords(long i) const {
        std::vector<long> x(d_.size());
        for (size_t j = 0; j < d_.size(); ++j) x[j] = i % d_[j], i /= d_[j];
        return x;
    }
    long index(const std::vector<long>& x) const {
        long i = 0;
        for (size_t j = d_.size(); j-- > 0;) i = i * d_[j] + mod_pos(x.at(j), d_[j]);
        return i;
    }

    long identity() const { return 0; }
    long generator(long j) const {
        std::vector<long> x(d_.size(), 0);
        x.at(j) = 1;
        return index(x);
    }
    long mul(long a, long b) const { return mul_[a * n_ + b]; }
    long inv(long a) const { return inv_[a]; }
    long pow(long a, long k) const {
        auto x = coords(a);
        for (size_t j = 0; j < x.size(); ++j) x[j] = mod_pos(static_cast<long>((__int128)x[j] * k % d_[j]), d_[j]);
        return index(x);
    }
    long element_order(long a) const {
        long o = 1;
        for (long x = a; x != 0; x = mul(x, a)) ++o;
        return o;
    }

    bool has_labels() const { return f_ > 0; }
    long conductor() const { return f_; }
    const std::vector<long>& generator_labels() const { return gen_labels_; }
    long label(long i) const {
        if (!has_labels()) throw MathError("group carries no residue labels");
        return labels_.at(i);
    }
    bool has_residue(long a) const { return f_ > 0 && residue_index_.count(mod_pos(a, f_)); }
    /// Index of the class of residue a (sigma_a).
    long from_label(long a) const {
        if (!has_labels()) throw MathError("group carries no residue labels");
        auto it = residue_index_.find(mod_pos(a, f_));
        if (it == residue_index_.end())
            throw MathError("residue " + std::to_string(a) + " does not lie in the group");
        return it->second;
    }
    /// All residues of the ambient group, ascending.
    std::vector<long> residues() const {
        std::vector<long> r;
        for (auto& [a, i] : residue_index_) r.push_back(a);
        return r;
    }

    /// Subgroup generated by the given elements, as a sorted index list.
    std::vector<long> generated_subgroup(const std::vector<long>& gens) const {
        std::set<long> s{0};
        std::vector<long> todo{0};
        while (!todo.empty()) {
            long x = todo.back();
            todo.pop_back();
            for (long g : gens) {
                long y = mul(x, g);
                if (s.insert(y).second) todo.push_back(y);
            }
        }
        return {s.begin(), s.end()};
    }

    friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) {
        return a.d_ == b.d_ && a.f_ == b.f_ && a.gen_labels_ == b.gen_labels_ && a.residue_index_ == b.residue_index_;
    }

    std::string element_name(long i) const {
        if (has_labels()) return "s" + std::to_string(label(i));
        std::ostringstream os;
        os << "g(";
        auto x = coords(i);
        for (size_t j = 0; j < x.size(); ++j) os << (j ? "," : "") << x[j];
        os << ")";
        return os.str();
    }

    std::string describe() const {
        std::ostringstream os;
        if (d_.empty()) os << "C1";
        for (size_t j = 0; j < d_.size(); ++j) os << (j ? " x " : "") << "C" << d_[j];
        if (has_labels()) {
            os << " [f=" << f_ << "; gens";
            for (long a : gen_labels_) os << " " << a;
            os << "]";
        }
        return os.str();
    }

   private:
    void init_tables() {
        n_ = 1;
        for (long x : d_) n_ *= x;
        mul_.assign(n_ * n_, 0);
        inv_.assign(n_, 0);
        std::vector<std::vector<long>> c(n_);
        for (long i = 0; i < n_; ++i) c[i] = coords(i);
        for (long i = 0; i < n_; ++i) {
            for (long j = 0; j < n_; ++j) {
                std::vector<long> s(d_.size());
                for (size_t k = 0; k < d_.size(); ++k) s[k] = c[i][k] + c[j][k];
                mul_[i * n_ + j] = index(s);
            }
            std::vector<long> s(d_.size());
            for (size_t k = 0; k < d_.size(); ++k) s[k] = -c[i][k];
            inv_[i] = index(s);
        }
    }

    std::vector<long> d_;
    long n_ = 1;
    long f_ = 0;
    std::vector<long> gen_labels_;
    std::vector<long> labels_;
    std::map<long, long> residue_index_;
    std::vector<long> mul_, inv_;
};

using GroupPtr = std::shared_ptr<const FinAbGroup>;

inline GroupPtr make_group(FinAbGroup g) { return std::make_shared<const FinAbGroup>(std::move(g)); }

inline GroupPtr units_mod(long f) { return make_group(FinAbGroup::units_mod(f)); }

inline void require_same_group(const GroupPtr& a, const GroupPtr& b) {
    if (a != b && !(*a == *b)) throw MathError("group mismatch");
}

/// Map from elements of `from` to elements of `to` induced by residue labels (restriction or projection).
inline std::vector<long> label_map(const FinAbGroup& from, const FinAbGroup& to) {
    if (from.conductor() % to.conductor() != 0)
        throw MathError("label map between incompatible conductors");
    std::vector<long> m(from.order());
    for (long i = 0; i < from.order(); ++i) m[i] = to.from_label(from.label(i));
    return m;
}

}  // namespace fgi
