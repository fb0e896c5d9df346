#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "ppinv/field.hpp"

using namespace ppinv;

namespace {

// Naive x^k by repeated multiplication; independent of square-and-multiply
// and of the log tables.
FieldElem naive_pow(const FieldElem& x, std::uint64_t k) {
    const auto& c = x.ctx();
    Code r = 1;
    for (std::uint64_t i = 0; i < k; ++i) r = c.mul_generic(r, x.code());
    return c.elem(r);
}

bool has_root_mod_p(const std::vector<std::uint64_t>& f, std::uint64_t p) {
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t v = 0;
        for (std::size_t i = f.size(); i-- > 0;) v = (v * x + f[i]) % p;
        if (v == 0) return true;
    }
    return false;
}

}  // namespace

TEST(FieldCtx, PrimeFieldUsesModulusY) {
    auto f = make_field(2, 1, 1);
    EXPECT_EQ(f->modulus(), (std::vector<std::uint32_t>{0, 1}));
    EXPECT_EQ(f->order(), 2U);
    EXPECT_EQ(f->generator_code(), 1U);
}

TEST(FieldCtx, SmallestIrreducibleCubicOverF3) {
    // Oracle: lexicographic scan (constant term most significant); a cubic is
    // irreducible iff it has no root.
    std::vector<std::uint32_t> expect;
    for (std::uint64_t c0 = 0; c0 < 3 && expect.empty(); ++c0)
        for (std::uint64_t c1 = 0; c1 < 3 && expect.empty(); ++c1)
            for (std::uint64_t c2 = 0; c2 < 3 && expect.empty(); ++c2)
                if (!has_root_mod_p({c0, c1, c2, 1}, 3))
                    expect = {static_cast<std::uint32_t>(c0), static_cast<std::uint32_t>(c1),
                              static_cast<std::uint32_t>(c2), 1};
    auto f = make_field(3, 1, 3);
    EXPECT_EQ(f->modulus(), expect);
    EXPECT_EQ(f->order(), 27U);
}

TEST(FieldCtx, TowerParameters) {
    auto f = make_field(2, 2, 3);
    EXPECT_EQ(f->q(), 4U);
    EXPECT_EQ(f->n(), 3U);
    EXPECT_EQ(f->order(), 64U);
    EXPECT_EQ(f->modulus().size(), 7U);
}

TEST(FieldCtx, RejectsBadParameters) {
    EXPECT_THROW(make_field(4, 1, 1), PreconditionError);
    EXPECT_THROW(make_field(3, 0, 2), PreconditionError);
    EXPECT_THROW(make_field(2, 1, 25), ScanBoundError);
    EXPECT_THROW(make_field(3, 1, 5, 100), ScanBoundError);
}

TEST(FieldCtx, SpecParsing) {
    auto s = FieldSpec::parse("p=3,e=2,n=3");
    EXPECT_EQ(s, (FieldSpec{3, 2, 3}));
    EXPECT_EQ(s.str(), "p=3,e=2,n=3");
    EXPECT_THROW(FieldSpec::parse("p=3,n=3"), PreconditionError);
    EXPECT_THROW(FieldSpec::parse("p=3,e=x,n=3"), PreconditionError);
    EXPECT_THROW(FieldSpec::parse("p=3,e=1,n=3,n=2"), PreconditionError);
}

TEST(Arithmetic, F4AlphaSquared) {
    auto f = make_field(2, 2, 1);
    const auto alpha = f->from_coeffs(std::vector<std::uint32_t>{0, 1});
    const auto alpha_plus_one = f->from_coeffs(std::vector<std::uint32_t>{1, 1});
    EXPECT_EQ(alpha * alpha, alpha_plus_one);
}

TEST(Arithmetic, ZeroAndInverse) {
    auto f = make_field(3, 1, 3);
    for (auto x : enumerate(*f)) {
        EXPECT_EQ(f->zero() * x, f->zero());
        if (!x.is_zero()) EXPECT_TRUE((x * inv(x)).is_one());
        EXPECT_EQ(inv(inv(x)), x);
    }
    EXPECT_TRUE(inv(f->zero()).is_zero());
    EXPECT_TRUE(inv(f->one()).is_one());
}

TEST(Arithmetic, InverseOfGeneratorInF9) {
    auto f = make_field(3, 1, 2);
    const auto g = find_generator(*f);
    EXPECT_EQ(inv(g), naive_pow(g, 7));
}

TEST(Arithmetic, PowConventions) {
    auto f = make_field(3, 1, 3);
    const auto g = f->generator();
    EXPECT_TRUE(pow(f->zero(), 0).is_one());
    EXPECT_TRUE(pow(f->zero(), 5).is_zero());
    EXPECT_EQ(pow(g, (f->order() - 1) / 2), -f->one());
    for (auto x : enumerate_nonzero(*f)) EXPECT_TRUE(pow(x, f->order() - 1).is_one());
    EXPECT_EQ(pow(g, BigInt(-1)), inv(g));
    EXPECT_EQ(pow(g, big_pow(3, 40)), naive_pow(g, static_cast<std::uint64_t>(mod_u64(big_pow(3, 40), 26))));
}

TEST(Arithmetic, PowMatchesRepeatedMultiplication) {
    for (auto spec : {FieldSpec{3, 1, 3}, FieldSpec{2, 2, 3}, FieldSpec{5, 1, 2}}) {
        auto f = make_field(spec);
        for (auto x : enumerate(*f))
            for (std::uint64_t k = 0; k <= 64; ++k) ASSERT_EQ(pow(x, k), naive_pow(x, k)) << spec.str() << " k=" << k;
    }
}

TEST(Arithmetic, ContextMismatchIsAnError) {
    auto f = make_field(3, 1, 3);
    auto g = make_field(3, 1, 3);
    EXPECT_THROW(f->one() + g->one(), ContextMismatch);
    EXPECT_THROW(f->one() * g->one(), ContextMismatch);
}

TEST(Frobenius, BasicIdentities) {
    auto f = make_field(3, 1, 3);
    const auto g = f->generator();
    EXPECT_EQ(frob_q(g, 1), naive_pow(g, 3));
    for (auto x : enumerate(*f)) {
        EXPECT_EQ(frob_q(x, 0), x);
        EXPECT_EQ(frob_q(x, f->n()), x);
        EXPECT_EQ(frob_q(frob_q(x, 1), f->n() - 1), x);
        EXPECT_EQ(f->frob_matrix(x.code(), 1), f->frob(x.code(), 1));
    }
}

TEST(Frobenius, MatrixAndLogPathsAgree) {
    for (auto spec : {FieldSpec{3, 2, 3}, FieldSpec{2, 2, 3}, FieldSpec{5, 1, 3}, FieldSpec{2, 3, 2}}) {
        auto f = make_field(spec);
        for (auto x : enumerate(*f))
            for (std::uint32_t i = 0; i < f->n(); ++i)
                ASSERT_EQ(f->frob_matrix(x.code(), i), f->frob(x.code(), i)) << spec.str();
    }
}

TEST(TraceNorm, LandInBaseField) {
    for (auto spec : {FieldSpec{3, 1, 3}, FieldSpec{3, 2, 3}, FieldSpec{2, 2, 3}, FieldSpec{5, 1, 2}}) {
        auto f = make_field(spec);
        for (auto x : enumerate(*f)) {
            EXPECT_TRUE(in_subfield(trace_rel(x), 1));
            EXPECT_TRUE(in_subfield(norm_rel(x), 1));
        }
        EXPECT_TRUE(trace_rel(f->zero()).is_zero());
        EXPECT_TRUE(norm_rel(f->one()).is_one());
        EXPECT_TRUE(norm_rel(f->zero()).is_zero());
        for (const auto& c : base_field_elements(*f)) EXPECT_EQ(norm_rel(c), pow(c, f->n()));
    }
}

TEST(TraceNorm, NormIsPowerOfGenerator) {
    auto f = make_field(3, 1, 3);
    const auto g = f->generator();
    EXPECT_EQ(norm_rel(g), naive_pow(g, 13));
}

TEST(TraceNorm, NormOfNegationForOddN) {
    // N(-a) = (-1)^n N(a): the predicates N(a) != -1 and N(-a) != 1 agree for odd n.
    for (auto spec : {FieldSpec{3, 1, 3}, FieldSpec{5, 1, 3}, FieldSpec{3, 1, 5}}) {
        auto f = make_field(spec);
        for (auto a : enumerate(*f)) {
            EXPECT_EQ(norm_rel(-a), -norm_rel(a));
            EXPECT_EQ(norm_rel(a) == -f->one(), norm_rel(-a) == f->one());
        }
    }
}

TEST(Squares, CountsAndNonSquareInBaseField) {
    for (auto spec : {FieldSpec{3, 1, 3}, FieldSpec{5, 1, 3}, FieldSpec{3, 2, 2}}) {
        auto f = make_field(spec);
        std::uint64_t squares = 0;
        for (auto x : enumerate_nonzero(*f)) squares += is_square(x) ? 1 : 0;
        EXPECT_EQ(squares, (f->order() - 1) / 2);
        EXPECT_TRUE(is_square(f->zero()));
        EXPECT_FALSE(is_square(f->generator()));
        EXPECT_TRUE(is_square(f->generator() * f->generator()));
    }
    // q = 3, n = 3: gcd(q+1, q^n-1) = 2, and some α ∈ F_3 is a non-square in F_27.
    auto f = make_field(3, 1, 3);
    bool found = false;
    for (const auto& c : base_field_elements(*f)) found = found || !is_square(c);
    EXPECT_TRUE(found);
}

TEST(Enumeration, DistinctAndComplete) {
    auto f = make_field(3, 1, 3);
    std::set<Code> seen;
    for (auto x : enumerate(*f)) seen.insert(x.code());
    EXPECT_EQ(seen.size(), 27U);
    EXPECT_EQ(enumerate(*f).size(), 27U);
}

TEST(Generator, IsPrimitiveAndSmallest) {
    for (auto spec : {FieldSpec{3, 1, 3}, FieldSpec{2, 2, 3}, FieldSpec{5, 1, 2}}) {
        auto f = make_field(spec);
        const auto g = f->generator();
        std::set<Code> powers;
        for (std::uint64_t k = 0; k < f->order() - 1; ++k) powers.insert(pow(g, k).code());
        EXPECT_EQ(powers.size(), f->order() - 1);
        for (Code c = 1; c < g.code(); ++c) {
            std::set<Code> ps;
            for (std::uint64_t k = 0; k < f->order() - 1; ++k) ps.insert(pow(f->elem(c), k).code());
            EXPECT_LT(ps.size(), f->order() - 1);
        }
    }
}

TEST(Subfield, MembershipAndDivisibility) {
    auto f = make_field(3, 1, 4);
    std::uint64_t in2 = 0;
    for (auto x : enumerate(*f)) in2 += in_subfield(x, 2) ? 1 : 0;
    EXPECT_EQ(in2, 9U);
    EXPECT_THROW(in_subfield(f->one(), 3), PreconditionError);
    EXPECT_EQ(base_field_elements(*f).size(), 3U);
}

TEST(Tables, ZechAndGenericAgreeExhaustively) {
    for (auto spec : {FieldSpec{2, 1, 6}, FieldSpec{3, 1, 3}, FieldSpec{3, 2, 2}, FieldSpec{5, 1, 3},
                      FieldSpec{7, 1, 2}, FieldSpec{2, 2, 3}}) {
        auto f = make_field(spec);
        ASSERT_TRUE(f->has_tables());
        for (Code a = 0; a < f->order(); ++a) {
            ASSERT_EQ(f->inv_table(a), f->inv_generic(a));
            for (Code b = 0; b < f->order(); ++b) {
                ASSERT_EQ(f->mul_table(a, b), f->mul_generic(a, b));
                ASSERT_EQ(f->add_zech(a, b), f->add_generic(a, b));
            }
        }
    }
}

TEST(Tables, UntabledContextMatchesTabled) {
    auto t = make_field(3, 1, 4);
    auto g = make_field(3, 1, 4, FieldCtx::kDefaultSizeBound, false);
    ASSERT_FALSE(g->has_tables());
    EXPECT_EQ(t->modulus(), g->modulus());
    EXPECT_EQ(t->generator_code(), g->generator_code());
    for (Code a = 0; a < t->order(); ++a) {
        ASSERT_EQ(t->inv(a), g->inv(a));
        ASSERT_EQ(t->frob(a, 1), g->frob(a, 1));
        ASSERT_EQ(t->pow(a, 41), g->pow(a, 41));
    }
}

TEST(Rendering, CoefficientsAndLog) {
    auto f = make_field(3, 1, 2);
    const auto g = f->generator();
    EXPECT_EQ(to_string(f->one()), "[1,0]=g^0");
    EXPECT_EQ(to_string(f->zero()), "[0,0]");
    EXPECT_EQ(to_string(pow(g, 5)).substr(to_string(pow(g, 5)).find('=')), "=g^5");
}
