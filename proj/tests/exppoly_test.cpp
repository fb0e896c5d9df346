#include <gtest/gtest.h>

#include "ppinv/exppoly.hpp"

using namespace ppinv;

TEST(ExpPoly, CanonicalExponents) {
    auto f = make_field(3, 1, 3);  // q^n - 1 = 26
    EXPECT_EQ(ExpPoly::canonical_exponent(*f, 0), 0U);
    EXPECT_EQ(ExpPoly::canonical_exponent(*f, 26), 26U);
    EXPECT_EQ(ExpPoly::canonical_exponent(*f, 27), 1U);
    EXPECT_EQ(ExpPoly::canonical_exponent(*f, -1), 25U);
    // x^26 and the constant 1 differ at 0 only.
    const auto a = ExpPoly::monomial(*f, 26);
    const auto c = ExpPoly::monomial(*f, 0);
    EXPECT_NE(a, c);
    EXPECT_EQ(a(f->zero()), f->zero());
    EXPECT_EQ(c(f->zero()), f->one());
}

TEST(ExpPoly, NegativePowersAreInverses) {
    auto f = make_field(5, 1, 2);
    const auto xinv = ExpPoly::monomial(*f, -1);
    const auto xm3 = ExpPoly::monomial(*f, -3);
    for (auto x : enumerate(*f)) {
        EXPECT_EQ(xinv(x), inv(x));
        EXPECT_EQ(xm3(x), inv(pow(x, 3)));
    }
    EXPECT_EQ(f->inv(0), 0U);
}

TEST(ExpPoly, ArithmeticMatchesPointwise) {
    auto f = make_field(3, 1, 3);
    const auto g = f->generator();
    const auto a = ExpPoly::monomial(*f, 5, g) + ExpPoly::monomial(*f, 1);
    const auto b = ExpPoly::monomial(*f, 9, g * g) - ExpPoly::monomial(*f, -2);
    const auto prod = a * b;
    const auto sum = a + b;
    const auto shifted = a.times_monomial(-4);
    const auto sub = a.substitute_power(4);
    const auto fr = a.frobenius(1);
    for (auto x : enumerate(*f)) {
        ASSERT_EQ(prod(x), a(x) * b(x));
        ASSERT_EQ(sum(x), a(x) + b(x));
        ASSERT_EQ(shifted(x), a(x) * inv(pow(x, 4)));
        ASSERT_EQ(sub(x), a(pow(x, 4)));
        ASSERT_EQ(fr(x), frob_q(a(x), 1));
    }
    EXPECT_EQ(a - a, ExpPoly(*f));
}

TEST(ExpPoly, LinPolyAtPowerAndFractions) {
    auto f = make_field(3, 1, 3);
    const auto g = f->generator();
    const LinPoly l(*f, {g, f->one(), g * g});
    const BigInt q = f->q();
    const auto lx = linpoly_at_power(l, q + 1);
    const auto frac = ep_from_fraction(l, ExpPoly::monomial(*f, q + 1, g));
    for (auto x : enumerate(*f)) {
        ASSERT_EQ(lx(x), l(pow(x, q + 1)));
        ASSERT_EQ(frac(x), l(x) * inv(g * pow(x, q + 1)));
    }
    EXPECT_THROW(ep_from_fraction(l, ExpPoly::monomial(*f, 1) + ExpPoly::monomial(*f, 2)), PreconditionError);
}

TEST(ValueTables, PermutationAndInverse) {
    auto f = make_field(3, 1, 3);
    const auto cube = ExpPoly::monomial(*f, 3);   // Frobenius: permutation
    const auto square = ExpPoly::monomial(*f, 2); // gcd(2, 26) = 2: not
    EXPECT_TRUE(is_permutation(cube));
    const auto pr = is_permutation(square);
    ASSERT_FALSE(pr);
    ASSERT_TRUE(pr.collision.has_value());
    EXPECT_EQ(square(pr.collision->first), square(pr.collision->second));
    EXPECT_LT(pr.collision->first.code(), pr.collision->second.code());

    const auto inverse = map_inverse_table(cube);
    EXPECT_TRUE(verify_inverse(tabulate(cube), inverse));
    EXPECT_TRUE(verify_inverse(cube, ExpPoly::monomial(*f, 9)));  // 3 * 9 = 27 ≡ 1
    const auto bad = verify_inverse(cube, ExpPoly::monomial(*f, 3));
    EXPECT_FALSE(bad);
    EXPECT_TRUE(bad.witness.has_value());
    EXPECT_THROW(map_inverse_table(square), PreconditionError);

    EXPECT_EQ(compose_tables(tabulate(cube), inverse), identity_table(*f));
    EXPECT_FALSE(first_difference(tabulate(cube), tabulate(cube)).has_value());
    EXPECT_TRUE(first_difference(tabulate(cube), identity_table(*f)).has_value());
}

TEST(ValueTables, ScanBoundEnforced) {
    auto f = make_field(3, 1, 5);
    ScanPolicy tight{100, 1};
    EXPECT_THROW(tabulate(ExpPoly::x(*f), tight), ScanBoundError);
    EXPECT_EQ(tabulate(ExpPoly::x(*f), ScanPolicy{1 << 24, 3}), identity_table(*f));
}
