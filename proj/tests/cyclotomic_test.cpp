#include <gtest/gtest.h>

#include <random>

#include "ppinv/cyclotomic.hpp"

using namespace ppinv;

namespace {

CycInt random_cyc(std::uint32_t p, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(-50, 50);
    std::vector<BigInt> h(p);
    for (auto& v : h) v = d(rng);
    return CycInt::from_histogram(p, h);
}

}  // namespace

TEST(CycInt, ZetaRelation) {
    for (std::uint32_t p : {2U, 3U, 5U, 7U}) {
        CycInt sum = CycInt::integer(p, 0);
        for (std::uint32_t i = 0; i < p; ++i) sum += CycInt::zeta_pow(p, i);
        EXPECT_EQ(sum, CycInt::integer(p, 0));
        EXPECT_EQ(CycInt::zeta_pow(p, 1).pow(p), CycInt::integer(p, 1));
        EXPECT_EQ(CycInt::zeta_pow(p, -1), CycInt::zeta_pow(p, p - 1));
    }
    EXPECT_EQ(CycInt::zeta_pow(2, 1), CycInt::integer(2, -1));
}

TEST(CycInt, RingAxioms) {
    std::mt19937_64 rng(1);
    for (std::uint32_t p : {3U, 5U, 7U}) {
        for (int t = 0; t < 30; ++t) {
            const auto a = random_cyc(p, rng), b = random_cyc(p, rng), c = random_cyc(p, rng);
            EXPECT_EQ(a * b, b * a);
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ(a * (b + c), a * b + a * c);
            EXPECT_EQ(a - a, CycInt::integer(p, 0));
            EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
        }
    }
}

TEST(CycInt, NormOfGaussTypeElement) {
    // (ζ - ζ^2)^2 = -3 in Z[ζ_3]
    const auto g = CycInt::zeta_pow(3, 1) - CycInt::zeta_pow(3, 2);
    EXPECT_EQ(g * g, CycInt::integer(3, -3));
    EXPECT_TRUE((g * g).is_integer());
    EXPECT_EQ(g.str(), "1 + 2*z^1");
}

TEST(CycInt, LargeExactCoefficients) {
    const auto x = CycInt::integer(5, BigInt(1) << 100);
    EXPECT_EQ((x * x).coeffs()[0], BigInt(1) << 200);
    EXPECT_THROW(CycInt(4), PreconditionError);
    EXPECT_THROW(CycInt::integer(3, 1) + CycInt::integer(5, 1), PreconditionError);
}
