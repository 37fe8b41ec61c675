#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fgi/gring/module.hpp"
#include "module_gen.hpp"

using namespace fgi;

namespace {

std::vector<Integer> ivec(std::initializer_list<long> xs) {
    std::vector<Integer> v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

// Determinant by rational elimination.
Rational det_rat(std::vector<std::vector<Rational>> a) {
    long n = static_cast<long>(a.size());
    Rational d = 1;
    for (long c = 0; c < n; ++c) {
        long p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) std::swap(a[p], a[c]), d = -d;
        d *= a[c][c];
        for (long r = c + 1; r < n; ++r) {
            Rational f = a[r][c] / a[c][c];
            for (long k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return d;
}

// Index of the span of integer vectors in Z^n: gcd of all maximal minors.
Integer minor_gcd(const std::vector<std::vector<Integer>>& gens, long n) {
    long m = static_cast<long>(gens.size());
    Integer g = 0;
    std::vector<long> pick(n);
    for (long i = 0; i < n; ++i) pick[i] = i;
    if (m < n) return 0;
    for (;;) {
        std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
        for (long r = 0; r < n; ++r)
            for (long c = 0; c < n; ++c) a[r][c] = gens[pick[c]][r];
        Rational dd = abs(det_rat(a));
        g = gcd(g, Integer(dd.get_num()));
        long i = n - 1;
        while (i >= 0 && pick[i] == m - n + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (long j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
    }
    return g;
}

std::vector<Integer> random_ivec(std::mt19937& rng, long n, long lo = -9, long hi = 9) {
    std::uniform_int_distribution<long> d(lo, hi);
    std::vector<Integer> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

}  // namespace

TEST(Lattice, HermiteFormShape) {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        long n = 1 + trial % 5, m = 1 + (trial / 5) % 7;
        std::vector<std::vector<Integer>> gens;
        for (long i = 0; i < m; ++i) gens.push_back(random_ivec(rng, n));
        Lattice L = Lattice::from_columns(n, gens);
        auto piv = L.pivots();
        auto B = L.basis();
        for (size_t j = 0; j < B.size(); ++j) {
            EXPECT_GT(B[j][piv[j]], 0);
            for (long r = piv[j] + 1; r < n; ++r) EXPECT_EQ(B[j][r], 0);
            for (size_t k = j + 1; k < B.size(); ++k) {
                EXPECT_GE(B[k][piv[j]], 0);
                EXPECT_LT(B[k][piv[j]], B[j][piv[j]]);
            }
        }
        for (auto& g : gens) EXPECT_TRUE(L.contains(g));
        if (L.full_rank()) {
            EXPECT_EQ(L.index(), minor_gcd(gens, n));
        }
    }
}

TEST(Lattice, CanonicalUnderPermutationAndUnimodularChange) {
    std::mt19937 rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        long n = 1 + trial % 4, m = 1 + trial % 6;
        std::vector<std::vector<Integer>> gens;
        for (long i = 0; i < m; ++i) gens.push_back(random_ivec(rng, n));
        Lattice L = Lattice::from_columns(n, gens);
        auto g2 = gens;
        std::shuffle(g2.begin(), g2.end(), rng);
        for (auto& v : g2)
            if (rng() % 2)
                for (auto& x : v) x = -x;
        if (g2.size() > 1)
            for (long i = 0; i < n; ++i) g2[0][i] += 3 * g2[1][i];
        g2.push_back(std::vector<Integer>(n, Integer(0)));
        EXPECT_EQ(Lattice::from_columns(n, g2), L);
    }
}

TEST(Lattice, SumIntersectionIndexIdentity) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        long n = 1 + trial % 4;
        auto mk = [&] {
            std::vector<std::vector<Rational>> vs;
            for (long i = 0; i < n + 1; ++i) {
                std::vector<Rational> v(n);
                for (auto& x : v) x = make_rational(static_cast<long>(rng() % 13) - 6, 1 + rng() % 4);
                vs.push_back(v);
            }
            return QLattice::from_vectors(n, vs);
        };
        QLattice A = mk(), B = mk();
        if (A.rank() < n || B.rank() < n) continue;
        QLattice S = A + B, I = intersect(A, B);
        EXPECT_TRUE(S.contains(A) && S.contains(B));
        EXPECT_TRUE(A.contains(I) && B.contains(I));
        // covol(A cap B) covol(A + B) = covol(A) covol(B)
        auto covol = [&](const QLattice& L) {
            Rational c(L.numerator().index());
            for (long i = 0; i < n; ++i) c /= L.denominator();
            return c;
        };
        EXPECT_EQ(covol(I) * covol(S), covol(A) * covol(B));
        EXPECT_EQ(A.dual().dual(), A);
    }
}

TEST(Lattice, SmithFormIsDiagonalAndUnimodular) {
    std::mt19937 rng(4);
    for (int trial = 0; trial < 60; ++trial) {
        long r = 1 + trial % 4, c = 1 + (trial / 4) % 5;
        IntMatrix A(r, c);
        for (long i = 0; i < r; ++i)
            for (long j = 0; j < c; ++j) A(i, j) = static_cast<long>(rng() % 11) - 5;
        SmithForm S = smith_form(A);
        EXPECT_EQ(S.U * A * S.V, S.D);
        for (long i = 0; i < r; ++i)
            for (long j = 0; j < c; ++j)
                if (i != j) {
                    EXPECT_EQ(S.D(i, j), 0);
                }
        auto d = S.diagonal();
        for (size_t i = 0; i + 1 < d.size(); ++i)
            if (d[i + 1] != 0) {
                EXPECT_EQ(d[i + 1] % d[i], 0);
            }
        auto ud = rational_inverse(S.U).second, vd = rational_inverse(S.V).second;
        EXPECT_EQ(ud, 1);
        EXPECT_EQ(vd, 1);
    }
}

TEST(IdealLattice, GeneratorExamples) {
    auto g = make_group(FinAbGroup::cyclic(2));
    QG one = qg_one(g), s = qg_element(g, 1);
    auto I1 = IdealLattice::from_generators(g, {one});
    EXPECT_EQ(I1.denominator(), 1);
    EXPECT_EQ(I1.basis(), (std::vector<std::vector<Integer>>{ivec({1, 0}), ivec({0, 1})}));

    auto I2 = IdealLattice::from_generators(g, {one * Rational(2), one + s});
    EXPECT_EQ(I2.denominator(), 1);
    EXPECT_EQ(I2.basis(), (std::vector<std::vector<Integer>>{ivec({2, 0}), ivec({1, 1})}));

    QG theta = (one - s) * make_rational(1, 6);
    auto I3 = IdealLattice::from_generators(g, {theta, one + s});
    EXPECT_EQ(I3.denominator(), 6);
    // 6 * lattice = span{(1,-1), (6,6)} = span{(12,0), (11,1)}
    EXPECT_EQ(I3.basis(), (std::vector<std::vector<Integer>>{ivec({12, 0}), ivec({11, 1})}));

    // Z[G] theta alone is the rank-one lattice Z (1 - s)/6
    QLattice zt = IdealLattice::span(g, {theta});
    EXPECT_EQ(zt.rank(), 1);
    EXPECT_EQ(zt.denominator(), 6);
    EXPECT_THROW(IdealLattice::from_generators(g, {theta}), MathError);

    EXPECT_EQ(I3.scaled(Rational(1)), I3);
    EXPECT_EQ(I3.scaled(one), I3);
}

TEST(IdealLattice, OperationsAreStableAndConsistent) {
    std::mt19937 rng(5);
    for (long f : {5L, 7L, 8L, 9L}) {
        auto g = units_mod(f);
        auto rq = [&] {
            QG x = qg_zero(g);
            for (long i = 0; i < g->order(); ++i) x[i] = make_rational(static_cast<long>(rng() % 7) - 3, 1 + rng() % 3);
            return x;
        };
        for (int trial = 0; trial < 4; ++trial) {
            IdealLattice A = IdealLattice::from_generators(g, {rq(), rq(), qg_one(g) * Rational(3)});
            IdealLattice B = IdealLattice::from_generators(g, {rq(), qg_norm(g), qg_one(g) * make_rational(5, 2)});
            for (auto* L : {&A, &B}) EXPECT_TRUE(L->is_stable());
            IdealLattice P = A * B, S = A + B, I = intersect(A, B), Z = A.intersect_integral();
            for (auto* L : {&P, &S, &I, &Z}) EXPECT_TRUE(L->is_stable());
            EXPECT_TRUE(S.contains(A) && S.contains(B) && A.contains(I) && B.contains(I));
            EXPECT_TRUE(Z.is_integral());
            for (auto& a : A.basis_elements())
                for (auto& b : B.basis_elements()) EXPECT_TRUE(P.contains(a * b));
            // permuting generators does not change the canonical form
            EXPECT_EQ(IdealLattice::from_generators(g, B.basis_elements()), B);
        }
    }
}

TEST(IdealLattice, ProjectionAlongLabels) {
    auto g = units_mod(5);
    auto gp = make_group(FinAbGroup::quotient(5, {1, 2, 3, 4}, {1, 4}));
    auto map = label_map(*g, *gp);
    auto I = IdealLattice::from_generators(g, {qg_one(g) * Rational(2), qg_one(g) + qg_element(g, g->from_label(2))});
    auto P = I.project(map, gp);
    // image contains 2 and 1 + s2, which already give everything: 2, 1+s2 in Z[C2]
    auto expect = IdealLattice::from_generators(gp, {qg_one(gp) * Rational(2), qg_one(gp) + qg_element(gp, gp->from_label(2))});
    EXPECT_EQ(P, expect);
}

TEST(Module, SmallAnnihilators) {
    auto g = make_group(FinAbGroup::cyclic(2));
    EXPECT_EQ(FiniteGModule::zero(g).annihilator(), IdealLattice::whole(g));
    auto z2 = FiniteGModule::cyclic_trivial(g, 2);
    auto ann = z2.annihilator();
    EXPECT_EQ(ann.basis(), (std::vector<std::vector<Integer>>{ivec({2, 0}), ivec({1, 1})}));
    EXPECT_EQ(z2.fitting_ideal(), ann);
    // (Z/2)^2 trivial: Fitting is strictly smaller than the annihilator
    auto v = direct_sum(z2, z2);
    EXPECT_EQ(v.annihilator(), ann);
    auto fit = v.fitting_ideal();
    EXPECT_TRUE(ann.contains(fit));
    EXPECT_FALSE(fit == ann);
    EXPECT_EQ(fit, ann * ann);
    EXPECT_EQ(FiniteGModule::zero(g).fitting_ideal(), IdealLattice::whole(g));
}

TEST(Module, EllPart) {
    auto g = make_group(FinAbGroup::cyclic(2));
    auto m6 = FiniteGModule::cyclic_trivial(g, 6);
    EXPECT_EQ(m6.ell_part(3).invariants(), std::vector<Integer>{3});
    EXPECT_EQ(FiniteGModule::cyclic_trivial(g, 2).ell_part(3).order(), 1);
    std::mt19937 rng(6);
    for (int trial = 0; trial < 30; ++trial) {
        auto R = testgen::random_module(rng);
        auto gg = make_group(FinAbGroup::cyclic(R.n));
        auto M = testgen::to_gmodule(R, rng, gg);
        for (long ell : {2L, 3L, 5L}) {
            auto P = M.ell_part(ell);
            long want = 1, o = R.order();
            while (o % ell == 0) o /= ell, want *= ell;
            EXPECT_EQ(P.order(), want);
            EXPECT_TRUE(P.annihilator().contains(M.annihilator()));
        }
    }
}

TEST(Module, InvalidModulesRejected) {
    auto g = make_group(FinAbGroup::cyclic(2));
    IntMatrix R(1, 1);
    R(0, 0) = 0;
    EXPECT_THROW(FiniteGModule(g, R, {IntMatrix::identity(1)}), MathError);
    R(0, 0) = 5;
    IntMatrix A(1, 1);
    A(0, 0) = 2;  // 2^2 = 4 != 1 mod 5
    EXPECT_THROW(FiniteGModule(g, R, {A}), MathError);
}

TEST(Module, RandomAnnihilatorsMatchExhaustiveSearch) {
    std::mt19937 rng(20261016);
    for (int trial = 0; trial < 25; ++trial) {
        auto R = testgen::random_module(rng);
        auto g = make_group(FinAbGroup::cyclic(R.n));
        auto M = testgen::to_gmodule(R, rng, g);
        EXPECT_EQ(M.order(), R.order());
        auto ann = M.annihilator();
        auto brute = testgen::brute_annihilator(R);
        Integer e = R.exponent(), en = 1;
        for (long i = 0; i < R.n; ++i) en *= e;
        EXPECT_EQ(ann.lattice().numerator().index() * Integer(brute.size()), en);
        for (auto& a : brute) {
            QG x = qg_zero(g);
            for (long i = 0; i < R.n; ++i) x[i] = a[i];
            EXPECT_TRUE(ann.contains(x));
        }
        auto fit = M.fitting_ideal();
        EXPECT_TRUE(ann.contains(fit));
        if (R.cyclic()) {
            EXPECT_EQ(fit, ann);
        }
    }
}
