#include <gtest/gtest.h>

#include "fgi/fields/sunit.hpp"

using namespace fgi;

namespace {

const PrecisionContext kCtx(192, -100);

bool near(const Real& a, const Real& b, double tol = 1e-30) { return abs(a - b).to_double() < tol; }

}  // namespace

TEST(Field, MakeFieldExamples) {
    auto K = FieldModel::full(5);
    EXPECT_EQ(K.group()->factors(), std::vector<long>{4});
    EXPECT_FALSE(K.is_totally_real());
    EXPECT_TRUE(K.contains_complex_conjugation());
    auto Kp = FieldModel::plus(5);
    EXPECT_TRUE(Kp.is_totally_real());
    EXPECT_EQ(Kp.group()->order(), 2);
    auto Q7 = FieldModel::make(7, {1, 2, 4});
    EXPECT_EQ(Q7.group()->order(), 2);
    EXPECT_FALSE(Q7.is_totally_real());
    EXPECT_EQ(Q7.degree_over_q(), 2);
    EXPECT_THROW(FieldModel::make(7, {1, 3}), MathError);
    for (long f : {5L, 7L, 8L, 9L, 12L, 13L, 15L, 16L, 20L, 21L, 25L}) {
        auto F = FieldModel::plus(f);
        EXPECT_EQ(F.group()->order() * static_cast<long>(F.kernel().size()), euler_phi(f));
    }
}

TEST(Places, CountsAndXRank) {
    PlaceSet P(FieldModel::full(5), {5});
    EXPECT_EQ(P.num_places(), 3);  // two complex places, one above 5
    EXPECT_EQ(XLattice(P).rank(), 2);
    PlaceSet Pp(FieldModel::plus(5), {5});
    EXPECT_EQ(Pp.num_places(), 3);
    EXPECT_EQ(XLattice(Pp).rank(), 2);
    auto R = PlaceSet::ramified(FieldModel::relative(7, 1));
    EXPECT_EQ(R.decomposition_group(0).size(), 1u);
    EXPECT_EQ(R.decomposition_group(1).size(), 3u);
    EXPECT_EQ(R.num_places(), 4);  // the complex place of Q(sqrt(-7)) splits completely
    EXPECT_EQ(XLattice(R).rank(), 3);
    // a split prime: 11 = 1 mod 5 splits completely in Q(zeta_5)
    PlaceSet P11(FieldModel::full(5), {5, 11});
    EXPECT_EQ(P11.num_places(), 3 + 4);
}

TEST(Places, OrbitsAreFibersAndXMatchesCharacters) {
    std::vector<PlaceSet> sets;
    for (long f : {5L, 7L, 8L, 9L, 12L, 13L, 15L, 16L, 21L, 25L}) {
        sets.emplace_back(FieldModel::full(f), prime_divisors(f));
        sets.emplace_back(FieldModel::plus(f), prime_divisors(f));
        sets.emplace_back(FieldModel::full(f), [&] {
            auto v = prime_divisors(f);
            v.push_back(f % 3 ? 3 : 5);
            return v;
        }());
    }
    sets.push_back(PlaceSet::ramified(FieldModel::relative(7, 1)));
    sets.push_back(PlaceSet::ramified(FieldModel::relative(11, 1)));
    sets.push_back(PlaceSet::ramified(FieldModel::relative(3, 2)));
    for (auto& P : sets) {
        const auto& G = *P.group();
        for (long i = 0; i < P.num_places(); ++i) {
            for (long s = 0; s < G.order(); ++s) EXPECT_EQ(P.places()[P.act(s, i)].base, P.places()[i].base);
            // orbit of w_v is all places above v
            std::set<long> orb;
            for (long s = 0; s < G.order(); ++s) orb.insert(P.act(s, P.distinguished(P.places()[i].base)));
            EXPECT_TRUE(orb.count(i));
        }
        XLattice X(P);
        long total = 0;
        for (auto& chi : characters(P.group())) {
            long r = r_of_chi(chi, P);
            EXPECT_EQ(r, X.multiplicity(chi)) << P.field().describe();
            total += r;
        }
        EXPECT_EQ(total, X.rank());
        // action matrices form a representation
        for (long a = 0; a < G.order(); ++a)
            for (long b = 0; b < G.order(); ++b) EXPECT_EQ(X.action(G.mul(a, b)), X.action(a) * X.action(b));
    }
}

TEST(Places, OrderOfVanishing) {
    PlaceSet P(FieldModel::full(5), {5});
    long c = P.field().complex_conjugation();
    for (auto& chi : characters(P.group())) EXPECT_EQ(r_of_chi(chi, P), chi.trivial_on(c) ? 1 : 0);
    for (long p : {3L, 5L, 7L, 11L, 13L})
        for (long f : {p, p * p}) {
            PlaceSet Q(FieldModel::plus(f), {p});
            for (auto& chi : characters(Q.group())) EXPECT_EQ(r_of_chi(chi, Q), 1);
        }
    auto R = PlaceSet::ramified(FieldModel::relative(7, 1));
    for (auto& chi : characters(R.group())) EXPECT_EQ(r_of_chi(chi, R), 1);
}

TEST(SUnit, WordsExpandAndNormalize) {
    long f = 5;
    auto eps = SUnit::one_minus_zeta(f, 1) * SUnit::one_minus_zeta(f, -1);
    auto z = CyclotomicNumber::zeta_power(5, 1);
    EXPECT_EQ(eps.expand(), CyclotomicNumber(5, Rational(2)) - z - z.inverse());
    // 1 - z^4 = -z^4 (1 - z)
    auto w = SUnit::one_minus_zeta(f, 4);
    EXPECT_EQ(w.symbols().begin()->first, 1);
    EXPECT_EQ(w.expand(), CyclotomicNumber::one(5) - z.pow(4));
    EXPECT_EQ((w * w.inverse()).expand(), CyclotomicNumber::one(5));
    EXPECT_EQ(eps.galois(2).expand(), eps.expand().galois(2));
    EXPECT_TRUE(eps.lies_in(FieldModel::plus(5)));
    EXPECT_FALSE(SUnit::one_minus_zeta(f, 1).lies_in(FieldModel::plus(5)));
    EXPECT_THROW(SUnit::one_minus_zeta(f, 5), MathError);
}

TEST(SUnit, NormsAtPlaces) {
    PlaceSet P(FieldModel::plus(5), {5});
    auto eps = SUnit::one_minus_zeta(5, 1) * SUnit::one_minus_zeta(5, -1);
    int prec = kCtx.working_bits();
    for (long i = 0; i < P.num_places(); ++i) EXPECT_TRUE(norm_at_place(SUnit::minus_one(5), P, i, kCtx).is_zero());
    long above5 = P.distinguished(1);
    EXPECT_TRUE(near(norm_at_place(eps, P, above5, kCtx), -log(Real(5L, prec))));
    // (5 - sqrt 5)/2 at the distinguished real place
    Real want = (Real(5L, prec) - sqrt(Real(5L, prec))) / 2L;
    EXPECT_TRUE(near(norm_at_place(eps, P, 0, kCtx), log(want)));
    // golden ratio from xi_2 = z^{-1/2}(1 + z) = z^2 (1 - z^2)/(1 - z)
    auto xi2 = SUnit::zeta(5, 2) * SUnit::one_minus_zeta(5, 2) * SUnit::one_minus_zeta(5, 1).inverse();
    Real phi = (Real(1L, prec) + sqrt(Real(5L, prec))) / 2L;
    EXPECT_TRUE(near(norm_at_place(xi2, P, 0, kCtx), log(phi)));
}

TEST(SUnit, ProductFormulaAndEquivariance) {
    std::vector<PlaceSet> sets;
    for (long f : {5L, 7L, 9L, 11L, 13L, 25L, 27L}) {
        sets.emplace_back(FieldModel::full(f), prime_divisors(f));
        sets.emplace_back(FieldModel::plus(f), prime_divisors(f));
    }
    sets.push_back(PlaceSet::ramified(FieldModel::relative(7, 1)));
    for (auto& P : sets) {
        long f = P.field().conductor();
        const auto& G = *P.group();
        // norm from Q(zeta_f) down to K of 1 - zeta, as a word
        SUnit u = SUnit::one(f);
        for (long h : P.field().kernel()) u = u * SUnit::one_minus_zeta(f, h);
        ASSERT_TRUE(u.lies_in(P.field()));
        auto v = regulator_vector(u, P, kCtx);
        Real s(kCtx.working_bits());
        for (auto& x : v) s += x;
        EXPECT_LT(abs(s).to_double(), 1e-40) << P.field().describe();
        // lambda(sigma u) = sigma lambda(u): component at sigma w equals component of u at w
        for (long a : P.field().ambient()) {
            long sg = G.from_label(a);
            auto vs = regulator_vector(u.galois(a), P, kCtx);
            for (long i = 0; i < P.num_places(); ++i) EXPECT_TRUE(near(vs[P.act(sg, i)], v[i])) << a;
        }
    }
}
