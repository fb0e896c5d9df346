#include <gtest/gtest.h>

#include "ppinv/families.hpp"
#include "ppinv/theorems.hpp"

using namespace ppinv;

TEST(Theorem1, IdentityOverF27) {
    // L = x: L(x)/x^{q+1} = x^{-q}, a permutation; L'(x^{q+1})/x = x^q likewise.
    auto f = make_field(3, 1, 3);
    const auto r = check_theorem1(LinPoly::identity(*f));
    EXPECT_TRUE(r.p1);
    EXPECT_TRUE(r.rhs);
    EXPECT_FALSE(r.violation());
}

TEST(Theorem2, SingularL) {
    auto f = make_field(3, 1, 3);
    const auto l = LinPoly::binomial(*f, 1, -f->one());  // x^q - x, kernel F_q
    const auto r = check_theorem2(l);
    EXPECT_FALSE(r.p1);
    EXPECT_FALSE(r.perm_l);
    EXPECT_FALSE(r.rhs);
    EXPECT_FALSE(r.violation());
    ASSERT_TRUE(r.p1_collision.has_value());
}

TEST(Theorem2, BinomialInstancesHaveP1) {
    // x^q + a x with N(-a) != 1 gives x^{-1} + a x^{-q}, a permutation.
    auto f = make_field(3, 1, 3);
    for (auto a : enumerate_nonzero(*f)) {
        if (norm_rel(-a).is_one()) continue;
        const auto r = check_theorem2(LinPoly::binomial(*f, 1, a));
        EXPECT_TRUE(r.p1);
        EXPECT_TRUE(r.rhs);
    }
}

TEST(Suites, OddDegreeEquivalence) {
    for (auto spec : {FieldSpec{3, 1, 3}, FieldSpec{5, 1, 3}}) {
        auto f = make_field(spec);
        const auto s = run_theorem_suite(*f, 200, kDefaultSeed);
        EXPECT_TRUE(s.ok()) << spec.str();
        EXPECT_TRUE(s.converse_asserted);
        EXPECT_EQ(s.converse_failures, 0U);
        EXPECT_GT(s.p1_true, 0U) << "suite never exercised the forward implication";
    }
}

TEST(Suites, EvenDegreeForwardOnly) {
    for (auto spec : {FieldSpec{3, 1, 2}, FieldSpec{3, 1, 4}}) {
        auto f = make_field(spec);
        const auto s = run_theorem_suite(*f, 200, kDefaultSeed);
        EXPECT_FALSE(s.converse_asserted);
        EXPECT_TRUE(s.ok()) << spec.str();
        EXPECT_GT(s.p1_true, 0U);
    }
}

TEST(Suites, SeedDeterminism) {
    auto f = make_field(3, 1, 3);
    std::mt19937_64 r1(5), r2(5);
    for (int i = 0; i < 50; ++i) EXPECT_EQ(random_linpoly(*f, r1), random_linpoly(*f, r2));
    const auto a = run_theorem_suite(*f, 50, 9, {}, true);
    const auto b = run_theorem_suite(*f, 50, 9, {}, true);
    EXPECT_EQ(a.p1_true, b.p1_true);
    EXPECT_EQ(a.converse_failures, b.converse_failures);
    const auto zero = run_theorem_suite(*f, 0, 9);
    EXPECT_TRUE(zero.ok());
    EXPECT_EQ(zero.trials, 0U);
}

TEST(Criterion, MatchesBijectivityOnE1Sweep) {
    auto f = make_field(3, 1, 3);
    const auto id = LinPoly::identity(*f);
    int disagreements = 0;
    for (auto a : enumerate_nonzero(*f)) {
        const auto cmp = compare_criterion(id, e1_linpoly(*f, a));
        disagreements += !cmp.agree();
        // x^{q+1}/ℓ(x) and ℓ(x)/x^{q+1} are bijective together.
        const auto direct = is_permutation(linpoly_as_exppoly(e1_linpoly(*f, a)).times_monomial(-4));
        EXPECT_EQ(direct.ok, cmp.bijective);
    }
    EXPECT_EQ(disagreements, 0);
}
