#include <gtest/gtest.h>

#include "fgi/units/quotient.hpp"
#include "fgi/units/stark.hpp"
#include <random>

using namespace fgi;

namespace {

const PrecisionContext kCtx(192, -100);

PlaceSet plus_places(long p, long n = 1) { return PlaceSet::ramified(FieldModel::plus(ipow(p, n))); }
PlaceSet full_places(long p, long n = 1) { return PlaceSet::ramified(FieldModel::full(ipow(p, n))); }

}  // namespace

TEST(Units, StarkUnitExpansion) {
    auto eps = stark_unit(5, 1);
    auto two = CyclotomicNumber(5, Rational(2));
    EXPECT_EQ(eps.expand(), two - CyclotomicNumber::zeta_power(5, 1) - CyclotomicNumber::zeta_power(5, 4));
    EXPECT_EQ(stark_unit(3, 1).expand(), CyclotomicNumber(3, Rational(3)));
    EXPECT_TRUE(eps.lies_in(FieldModel::plus(5)));
    // sigma_a(eps) = (1 - zeta^a)(1 - zeta^{-a})
    for (long a : {2L, 3L, 4L})
        EXPECT_EQ(eps.galois(a), SUnit::one_minus_zeta(5, a) * SUnit::one_minus_zeta(5, -a));
    EXPECT_THROW(stark_unit(4, 1), MathError);
}

TEST(Units, CyclotomicUnits) {
    long f = 5;
    auto xi2 = cyclotomic_unit(f, 2);
    EXPECT_TRUE(xi2.lies_in(FieldModel::plus(5)));
    int prec = kCtx.working_bits();
    Real golden = (Real(1L, prec) + sqrt(Real(5L, prec))) / Real(2L, prec);
    EXPECT_LT(abs(xi2.log_abs(1, prec) - log(golden)).to_double(), 1e-50);
    EXPECT_LT(abs(xi2.expand().embed(1, prec).im).to_double(), 1e-50);
    for (long p : {5L, 7L, 11L}) {
        auto eps = stark_unit(p, 1);
        auto gens = cyclotomic_unit_gens(p, 1);
        EXPECT_EQ(static_cast<long>(gens.size()), (p - 1) / 2 - 1 + 1);
        for (long a : cyclotomic_unit_indices(p, 1)) {
            auto xi = cyclotomic_unit(p, a);
            EXPECT_TRUE(xi.lies_in(FieldModel::plus(p)));
            auto lhs = (xi.pow(2) * eps).expand_fraction();
            auto rhs = eps.galois(a).expand_fraction();
            EXPECT_EQ(lhs.first * rhs.second, rhs.first * lhs.second) << p << " " << a;
        }
    }
    EXPECT_EQ(cyclotomic_unit_indices(5, 2).size(), 9u);  // 2..12 without 5 and 10
}

TEST(Units, RootsOfUnity) {
    EXPECT_EQ(roots_of_unity_order(FieldModel::plus(7)), 2);
    EXPECT_EQ(roots_of_unity_order(FieldModel::full(7)), 14);
    EXPECT_EQ(roots_of_unity_order(FieldModel::full(8)), 8);
    EXPECT_EQ(roots_of_unity_order(FieldModel::relative(7, 1)), 14);
    EXPECT_EQ(roots_of_unity_order(FieldModel::make(7, {1, 2, 4})), 2);
    EXPECT_EQ(roots_of_unity_generator(FieldModel::full(9)).pow(18), SUnit::one(9));
    EXPECT_FALSE(roots_of_unity_generator(FieldModel::full(9)).pow(9) == SUnit::one(9));
}

TEST(Units, BuiltinRanksAndProductFormula) {
    for (long p : {5L, 7L, 11L, 13L}) {
        std::vector<PlaceSet> sets{plus_places(p), full_places(p)};
        if (p % 4 == 3) sets.push_back(PlaceSet::ramified(FieldModel::relative(p, 1)));
        for (auto& P : sets) {
            auto U = sunit_group_builtin(P);
            EXPECT_EQ(static_cast<long>(U.gens.size()), P.num_places() - 1);
            for (auto& u : U.gens) {
                EXPECT_TRUE(u.lies_in(P.field()));
                Real s(kCtx.working_bits());
                for (auto& x : regulator_vector(u, P, kCtx)) s += x;
                EXPECT_LT(abs(s).to_double(), 1e-40);
            }
            UnitCoordinates C(U, kCtx);  // throws on dependent generators
        }
    }
    EXPECT_EQ(plus_places(7).num_places() - 1, 3);
    EXPECT_THROW(sunit_group_builtin(PlaceSet::ramified(FieldModel::full(15))), UnsupportedError);
    EXPECT_THROW(sunit_group_builtin(PlaceSet(FieldModel::plus(7), {3, 7})), UnsupportedError);
}

TEST(Units, CoordinatesRoundTrip) {
    auto P = plus_places(11);
    auto U = sunit_group_builtin(P);
    UnitCoordinates C(U, kCtx);
    std::mt19937_64 rng(7);
    for (int it = 0; it < 10; ++it) {
        std::vector<Integer> want{Integer(static_cast<long>(rng() % 2))};
        SUnit x = U.torsion.pow(want[0].get_si());
        for (auto& u : U.gens) {
            long c = static_cast<long>(rng() % 7) - 3;
            want.push_back(Integer(c));
            x = x * u.pow(c);
        }
        EXPECT_EQ(C.coords(x), want);
    }
    // an element outside U: sqrt of a non-square
    EXPECT_THROW(C.coords(SUnit::zeta(11, 1)), MathError);
}

TEST(Units, QuotientP5Plus) {
    auto P = plus_places(5);
    auto U = sunit_group_builtin(P), E = stark_module(P);
    EXPECT_EQ(E.gens.size(), 2u);
    auto M = quotient_module(U, E, kCtx);
    EXPECT_EQ(M.order(), 2);
    for (auto& A : M.action()) {
        for (long i = 0; i < M.num_generators(); ++i) {
            auto v = M.generator_vector(i);
            auto w = A * v;
            std::vector<Integer> d(v.size());
            for (size_t k = 0; k < v.size(); ++k) d[k] = w[k] - v[k];
            EXPECT_TRUE(M.is_zero(d));
        }
    }
    auto g = P.group();
    auto ann = M.annihilator();
    EXPECT_EQ(ann, IdealLattice::from_generators(g, {qg_one(g) * Rational(2), qg_one(g) + qg_element(g, 1)}));
    // brute force over coefficient vectors mod the exponent 2
    std::vector<QG> kill{qg_one(g) * Rational(2), qg_element(g, 1) * Rational(2)};
    for (long a = 0; a < 2; ++a)
        for (long b = 0; b < 2; ++b) {
            QG x = qg_one(g) * Rational(a) + qg_element(g, 1) * Rational(b);
            bool ok = true;
            for (long i = 0; i < M.num_generators(); ++i) ok = ok && M.is_zero(M.apply(x, M.generator_vector(i)));
            if (ok) kill.push_back(x);
        }
    EXPECT_EQ(ann, IdealLattice::from_generators(g, kill));
    EXPECT_TRUE(quotient_module(U, U, kCtx).order() == 1);
}

TEST(Units, QuotientIndexMatchesDeterminant) {
    for (long p : {7L, 11L, 13L}) {
        auto P = plus_places(p);
        auto U = sunit_group_builtin(P), E = stark_module(P);
        auto M = quotient_module(U, E, kCtx);
        // index of E in U modulo torsion = |det| of the coordinate matrix of a free basis of E
        UnitCoordinates C(U, kCtx);
        long r = static_cast<long>(U.gens.size());
        std::vector<std::vector<Integer>> cols;
        for (long i = 0; i < r; ++i) {
            auto c = C.coords(E.gens[i]);
            cols.push_back(std::vector<Integer>(c.begin() + 1, c.end()));
        }
        IntMatrix D = IntMatrix::from_columns(cols, r);
        Integer det = 1;
        for (auto& d : smith_form(D).diagonal()) det *= d;
        EXPECT_EQ(M.order(), abs(det)) << p;
        Integer n = M.order();
        while (n % 2 == 0) n /= 2;
        EXPECT_EQ(n, 1) << p;  // supported on 2
        IdealLattice ann = M.annihilator();
        EXPECT_TRUE(ann.contains(qg_one(P.group()) * Rational(M.order())));
    }
}

TEST(Units, FullFieldStarkModuleIsEverything) {
    for (long p : {5L, 7L}) {
        auto P = full_places(p);
        auto M = quotient_module(sunit_group_builtin(P), stark_module(P), kCtx);
        EXPECT_EQ(M.order(), 1) << p;
    }
}

TEST(Stark, RealSubfield) {
    for (long p : {5L, 7L, 11L, 13L}) {
        auto P = plus_places(p);
        auto r = verify_stark(P, stark_unit(p, 1), 2, kCtx);
        EXPECT_TRUE(r.pass) << p << " " << r.message;
        EXPECT_LT(r.max_residual.to_double(), 1e-30);
        EXPECT_EQ(r.uv_case, "b");
    }
    // perturbing by a non-torsion unit breaks it
    auto P = plus_places(7);
    auto bad = stark_unit(7, 1) * cyclotomic_unit(7, 2);
    auto r = verify_stark(P, bad, 2, kCtx);
    EXPECT_FALSE(r.pass);
    EXPECT_GT(r.max_residual.to_double(), 0.1);
    // the full field's infinite places are complex: w has a nontrivial decomposition group
    EXPECT_THROW(verify_stark(full_places(5), SUnit::one_minus_zeta(5, 1), 10, kCtx), MathError);
}

TEST(Stark, RelativeHalfStickelbergerElement) {
    for (long p : {7L, 11L}) {
        auto P = PlaceSet::ramified(FieldModel::relative(p, 1));
        auto eps = stark_element(P);
        long e = roots_of_unity_order(P.field());
        EXPECT_EQ(e, 2 * p);
        auto r = verify_stark(P, eps, e, kCtx);
        EXPECT_TRUE(r.pass) << p << " " << r.message;
        EXPECT_LT(r.max_residual.to_double(), 1e-25);
    }
    // p = 7: e theta~ = 5 - sigma_2 + 3 sigma_4
    auto K = FieldModel::relative(7, 1);
    auto eps = stark_element(PlaceSet::ramified(K));
    auto want = SUnit::one_minus_zeta(7, 1, 5) * SUnit::one_minus_zeta(7, 2, -1) * SUnit::one_minus_zeta(7, 4, 3);
    EXPECT_EQ(eps, want);
}
