#include <gtest/gtest.h>

#include <set>

#include "ppinv/search.hpp"

using namespace ppinv;

namespace {

// Norm-fiber oracle: N maps F_{q^n}^* onto F_q^*, each fiber of size (q^n-1)/(q-1).
std::uint64_t count_norm_not(const FieldCtx& f, const FieldElem& excluded) {
    std::uint64_t c = 0;
    for (auto a : enumerate_nonzero(f)) c += !(norm_rel(a) == excluded);
    return c;
}

}  // namespace

TEST(Search, E0OverF27MatchesNormFibers) {
    auto f = make_field(3, 1, 3);
    const std::uint64_t expected = count_norm_not(*f, -f->one());
    EXPECT_EQ(expected, 26U - 13U);
    const auto st = search_family(FamilyId::E0_TRINOMIAL, f, {}, [](FamilyInstance&& inst) {
        EXPECT_TRUE(inst.verified());
        return true;
    });
    EXPECT_EQ(st.yielded, expected);
    EXPECT_EQ(st.failed, 0U);
    EXPECT_EQ(st.candidates, 26U);
    EXPECT_EQ(st.gated, 26U - expected);
}

TEST(Search, UnsatisfiableFamilyIsEmpty) {
    // q = 2: N(-a) = 1 for every a, so nothing passes the gate.
    auto f = make_field(2, 1, 3);
    EXPECT_TRUE(collect_family(FamilyId::THM_RS_INVERSE, f).empty());
    // Case 3 needs n = 4 and odd q; q = 3 admits no tuple at all.
    EXPECT_TRUE(collect_family(FamilyId::COR_N2K_CASE3, make_field(3, 1, 4)).empty());
    // No parameterization: f4k over an odd field, reciprocal-b2 for odd n.
    EXPECT_TRUE(collect_family(FamilyId::F4K_EXAMPLE, make_field(3, 1, 3)).empty());
    EXPECT_TRUE(collect_family(FamilyId::THM_RECIPROCAL_B2, make_field(3, 1, 3)).empty());
}

TEST(Search, CaseTwoOverF81YieldsOnlySquares) {
    auto f = make_field(3, 1, 4);
    std::set<Code> squares;
    for (auto x : enumerate_nonzero(*f)) squares.insert((x * x).code());
    const auto got = collect_family(FamilyId::COR_N2K_CASE2, f);
    EXPECT_EQ(got.size(), squares.size());
    for (const auto& inst : got) {
        const auto* b = inst.param("b");
        ASSERT_NE(b, nullptr);
        EXPECT_TRUE(squares.count(std::get<FieldElem>(b->value).code()));
    }
}

TEST(Search, OrderIsDeterministicAcrossThreadCounts) {
    auto f = make_field(3, 1, 3);
    auto codes = [&](unsigned threads) {
        std::vector<Code> out;
        ScanPolicy policy;
        policy.threads = threads;
        search_family(
            FamilyId::PROP_N3_SEXTIC, f, {},
            [&](FamilyInstance&& inst) {
                out.push_back(std::get<FieldElem>(inst.param("a")->value).code());
                return true;
            },
            policy);
        return out;
    };
    const auto one = codes(1);
    EXPECT_FALSE(one.empty());
    EXPECT_TRUE(std::is_sorted(one.begin(), one.end()));
    EXPECT_EQ(one, codes(4));
}

TEST(Search, LimitAndFilters) {
    auto f = make_field(3, 1, 3);
    SearchFilter filter;
    filter.limit = 3;
    EXPECT_EQ(collect_family(FamilyId::E1_FAMILY, make_field(5, 1, 3), filter).size(), 3U);
    // N(a) lies in {1, -1} for q = 3, so e1 has no valid a over F_27.
    EXPECT_TRUE(collect_family(FamilyId::E1_FAMILY, f).empty());

    SearchFilter half;
    half.variant = "half-exponent";
    for (const auto& inst : collect_family(FamilyId::E0_TRINOMIAL, f, half))
        EXPECT_EQ(std::get<std::string>(inst.param("variant")->value), "half-exponent");

    auto f9 = make_field(3, 1, 2);
    SearchFilter form2;
    form2.form = 2;
    const auto c3 = collect_family(FamilyId::CONCLUSION_3, f9, form2);
    EXPECT_FALSE(c3.empty());
    for (const auto& inst : c3) EXPECT_EQ(std::get<std::int64_t>(inst.param("form")->value), 2);
}

TEST(Search, F4kAndBranchTwo) {
    const auto f64 = make_field(2, 2, 3);
    const auto f4 = collect_family(FamilyId::F4K_EXAMPLE, f64);
    EXPECT_EQ(f4.size(), 2U);

    SearchFilter filter;
    filter.limit = 20;
    const auto st = search_family(FamilyId::THM_RECIPROCAL_B2, make_field(3, 1, 2), filter,
                                  [](FamilyInstance&&) { return true; });
    EXPECT_EQ(st.failed, 0U);
    EXPECT_GT(st.yielded, 0U);
}
