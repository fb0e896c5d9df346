#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "ppinv/linpoly.hpp"

using namespace ppinv;

namespace {

LinPoly random_linpoly(const FieldCtx& f, std::mt19937_64& rng) {
    std::uniform_int_distribution<Code> pick(0, static_cast<Code>(f.order() - 1));
    LinPoly l(f);
    for (std::uint32_t i = 0; i < f.n(); ++i) l.set(i, f.elem(pick(rng)));
    return l;
}

// Pointwise oracle for equality of two linear maps.
bool same_map(const LinPoly& a, const LinPoly& b) {
    for (auto x : enumerate(a.ctx()))
        if (a(x) != b(x)) return false;
    return true;
}

}  // namespace

TEST(LinPoly, IdentityAndFolding) {
    auto f = make_field(3, 1, 3);
    const auto id = LinPoly::identity(*f);
    for (auto x : enumerate(*f)) EXPECT_EQ(id(x), x);
    // a_n x^{q^n} folds into a_0 x.
    LinPoly folded(*f, {f->zero(), f->zero(), f->zero(), f->one()});
    EXPECT_EQ(folded, id);
}

TEST(LinPoly, BinomialOnBaseField) {
    auto f = make_field(3, 1, 3);
    const auto a = f->generator();
    const auto l = LinPoly::binomial(*f, 1, a);
    for (const auto& c : base_field_elements(*f)) EXPECT_EQ(l(c), (f->one() + a) * c);
}

TEST(LinPoly, IsFqLinear) {
    auto f = make_field(3, 2, 2);
    std::mt19937_64 rng(7);
    const auto l = random_linpoly(*f, rng);
    const auto fq = base_field_elements(*f);
    for (const auto& c : fq)
        for (auto x : enumerate(*f)) EXPECT_EQ(l(c * x + f->generator()), c * l(x) + l(f->generator()));
}

TEST(Lambda, SingleTermWhenNIsOne) {
    auto f = make_field(5, 1, 1);
    const auto lam = lambda_poly(*f);
    for (auto x : enumerate(*f)) EXPECT_EQ(lam(x), -x);
}

TEST(Lambda, TelescopingIdentity) {
    // λ(c)^{q^2} + λ(c) + 2c = 0 for odd n.
    for (auto spec : {FieldSpec{3, 1, 3}, FieldSpec{5, 1, 3}, FieldSpec{3, 1, 5}}) {
        auto f = make_field(spec);
        const auto lam = lambda_poly(*f);
        const auto two = f->from_int(2);
        for (auto c : enumerate(*f)) ASSERT_TRUE((frob_q(lam(c), 2) + lam(c) + two * c).is_zero()) << spec.str();
    }
}

TEST(Lambda, ExplicitFormForNThree) {
    auto f = make_field(3, 1, 3);
    const auto lam = lambda_poly(*f);
    for (auto c : enumerate(*f)) {
        EXPECT_EQ(lam(c), -c + frob_q(c, 2) - frob_q(c, 4));
        EXPECT_EQ(frob_q(lam(c), 2) + lam(c), -(f->from_int(2) * c));
    }
}

TEST(Compose, IdentityAndPointwiseOracle) {
    auto f = make_field(3, 1, 3);
    std::mt19937_64 rng(11);
    const auto id = LinPoly::identity(*f);
    for (int trial = 0; trial < 50; ++trial) {
        const auto l = random_linpoly(*f, rng);
        const auto m = random_linpoly(*f, rng);
        const auto k = random_linpoly(*f, rng);
        EXPECT_EQ(lp_compose(l, id), l);
        EXPECT_EQ(lp_compose(id, l), l);
        const auto lm = lp_compose(l, m);
        for (auto x : enumerate(*f)) ASSERT_EQ(lm(x), l(m(x)));
        EXPECT_EQ(lp_compose(lp_compose(l, m), k), lp_compose(l, lp_compose(m, k)));
        EXPECT_TRUE(same_map(lp_add(l, m), LinPoly(*f, {l.coeff(0) + m.coeff(0), l.coeff(1) + m.coeff(1),
                                                          l.coeff(2) + m.coeff(2)})));
    }
}

TEST(Compose, FourKExampleComposesToFrobeniusSquare) {
    // q = 4, n = 3: L = x^{q^2} + x^q + α^2 x, ℓ = α x^{q^2} + x^q + x, L∘ℓ = x^{q^2}.
    auto f = make_field(2, 2, 3);
    for (auto alpha : enumerate_nonzero(*f)) {
        if (alpha.is_one() || !(pow(alpha, 3).is_one())) continue;
        const LinPoly big(*f, {alpha * alpha, f->one(), f->one()});
        const LinPoly small(*f, {f->one(), f->one(), alpha});
        EXPECT_EQ(lp_compose(big, small), LinPoly::monomial(*f, 2, f->one()));
    }
}

TEST(Transpose, Definitions) {
    auto f = make_field(3, 1, 3);
    EXPECT_EQ(transpose(LinPoly::identity(*f)), LinPoly::identity(*f));
    const auto a1 = f->generator();
    const auto l = LinPoly::monomial(*f, 1, a1);
    EXPECT_EQ(transpose(l), LinPoly::monomial(*f, f->n() - 1, frob_q(a1, f->n() - 1)));
}

TEST(Transpose, AdjointDoubleTransposeAndRank) {
    std::mt19937_64 rng(2024);
    for (auto spec : {FieldSpec{3, 1, 3}, FieldSpec{3, 1, 4}, FieldSpec{2, 2, 3}}) {
        auto f = make_field(spec);
        for (int trial = 0; trial < 20; ++trial) {
            const auto l = random_linpoly(*f, rng);
            const auto lt = transpose(l);
            EXPECT_EQ(transpose(lt), l);
            for (auto x : enumerate(*f))
                for (auto y : enumerate(*f)) ASSERT_EQ(trace_rel(y * l(x)), trace_rel(x * lt(y)));
        }
    }
}

TEST(Transpose, RankPreservedOnRandomInstances) {
    std::mt19937_64 rng(99);
    for (auto spec : {FieldSpec{3, 1, 3}, FieldSpec{3, 1, 4}}) {
        auto f = make_field(spec);
        for (int trial = 0; trial < 200; ++trial) {
            auto l = random_linpoly(*f, rng);
            if (trial % 3 == 0) l = lp_compose(l, LinPoly::binomial(*f, 1, -f->one()));  // force singular
            EXPECT_EQ(lp_rank(l), lp_rank(transpose(l)));
        }
    }
}

TEST(Matrix, MatrixOfTransposeIsTransposeInDualBasis) {
    std::mt19937_64 rng(5);
    auto f = make_field(3, 1, 3);
    const auto basis = default_basis(*f);
    const auto dual = dual_basis(basis);
    for (int trial = 0; trial < 10; ++trial) {
        const auto l = random_linpoly(*f, rng);
        EXPECT_EQ(lp_matrix(transpose(l), dual), lp_matrix(l, basis).transposed());
    }
}

TEST(Matrix, DualBasisAndDependentBasis) {
    auto f = make_field(5, 1, 3);
    const auto basis = default_basis(*f);
    const auto dual = dual_basis(basis);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            EXPECT_EQ(trace_rel(basis[i] * dual[j]), i == j ? f->one() : f->zero());
    std::vector<FieldElem> dependent{f->one(), f->from_int(2), f->generator()};
    EXPECT_THROW(lp_matrix(LinPoly::identity(*f), dependent), PreconditionError);
}

TEST(Kernel, IdentityAndFrobeniusMinusOne) {
    for (auto spec : {FieldSpec{3, 1, 3}, FieldSpec{5, 1, 2}, FieldSpec{3, 2, 2}}) {
        auto f = make_field(spec);
        EXPECT_EQ(lp_rank(LinPoly::identity(*f)), f->n());
        EXPECT_EQ(lp_kernel(LinPoly::identity(*f)), std::vector<FieldElem>{f->zero()});
        const auto l = LinPoly::binomial(*f, 1, -f->one());  // x^q - x
        EXPECT_EQ(lp_rank(l), f->n() - 1);
        EXPECT_EQ(lp_kernel(l), base_field_elements(*f));
    }
}

TEST(Kernel, ScanAndNullspaceAgree) {
    std::mt19937_64 rng(3);
    auto f = make_field(3, 1, 4);
    for (int trial = 0; trial < 40; ++trial) {
        auto l = random_linpoly(*f, rng);
        if (trial % 2 == 0) l = lp_compose(l, LinPoly::binomial(*f, 2, -f->one()));
        EXPECT_EQ(lp_kernel_scan(l), lp_kernel_nullspace(l));
        EXPECT_EQ(lp_kernel_scan(l).size(), static_cast<std::size_t>(std::pow(3.0, 4 - lp_rank(l))));
    }
}

TEST(Invert, GenericInverseComposesToIdentity) {
    std::mt19937_64 rng(8);
    for (auto spec : {FieldSpec{3, 1, 3}, FieldSpec{2, 2, 3}, FieldSpec{3, 1, 4}}) {
        auto f = make_field(spec);
        const auto id = LinPoly::identity(*f);
        EXPECT_EQ(lp_invert(id), id);
        int inverted = 0;
        for (int trial = 0; trial < 30; ++trial) {
            const auto l = random_linpoly(*f, rng);
            if (lp_rank(l) < f->n()) {
                EXPECT_THROW(lp_invert(l), PreconditionError);
                continue;
            }
            const auto li = lp_invert(l);
            EXPECT_EQ(lp_compose(l, li), id);
            EXPECT_EQ(lp_compose(li, l), id);
            for (auto x : enumerate(*f)) ASSERT_EQ(l(li(x)), x);
            ++inverted;
        }
        EXPECT_GT(inverted, 0);
    }
}

TEST(InvertBinomial, NThreeClosedForm) {
    // (x^{q^2} - a^{q^2} x^q + a^{q^2+q} x) / (N(a) + 1)
    auto f = make_field(3, 1, 3);
    for (auto a : enumerate_nonzero(*f)) {
        if (norm_rel(-a).is_one()) {
            EXPECT_THROW(lp_invert_binomial(*f, 1, a), PreconditionError);
            continue;
        }
        const auto s = inv(norm_rel(a) + f->one());
        const LinPoly expect(*f, {s * frob_q(a, 2) * frob_q(a, 1), -(s * frob_q(a, 2)), s});
        EXPECT_EQ(lp_invert_binomial(*f, 1, a), expect);
    }
}

TEST(InvertBinomial, MatchesMatrixInversionAndComposes) {
    for (auto spec : {FieldSpec{3, 1, 3}, FieldSpec{5, 1, 3}, FieldSpec{3, 1, 5}, FieldSpec{3, 2, 3}, FieldSpec{2, 1, 4}}) {
        auto f = make_field(spec);
        const auto id = LinPoly::identity(*f);
        for (std::uint64_t k = 1; k < 2 * f->n(); ++k) {
            if (std::gcd<std::uint64_t>(k, f->n()) != 1) {
                EXPECT_THROW(lp_invert_binomial(*f, k, f->one()), PreconditionError);
                continue;
            }
            for (auto a : enumerate_nonzero(*f)) {
                if (norm_rel(-a).is_one()) continue;
                const auto b = LinPoly::binomial(*f, k, a);
                const auto closed = lp_invert_binomial(*f, k, a);
                ASSERT_EQ(lp_compose(b, closed), id) << spec.str() << " k=" << k;
                ASSERT_EQ(closed, lp_invert(b)) << spec.str() << " k=" << k;
            }
        }
    }
}

TEST(InvertBinomial, RejectsZeroAndNormOne) {
    auto f = make_field(3, 1, 3);
    EXPECT_THROW(lp_invert_binomial(*f, 1, f->zero()), PreconditionError);
    EXPECT_THROW(lp_invert_binomial(*f, 1, -f->one()), PreconditionError);  // N(1) = 1
    EXPECT_THROW(lp_invert_binomial(*f, 3, f->one()), PreconditionError);   // gcd(3, 3) = 3
}
