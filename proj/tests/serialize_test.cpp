#include <gtest/gtest.h>

#include "ppinv/characters.hpp"
#include "ppinv/serialize.hpp"

using namespace ppinv;

TEST(Serialize, ElementsBothEncodings) {
    auto f = make_field(3, 1, 3);
    for (auto a : enumerate(*f)) {
        const Json j = to_json(a);
        EXPECT_EQ(elem_from_json(*f, j), a);
        EXPECT_EQ(elem_from_json(*f, Json(a.code())), a);
    }
    // code = c0 + 3 c1 + 9 c2
    EXPECT_EQ(elem_from_json(*f, Json::parse("[1,2,0]")).code(), 7U);
    EXPECT_EQ(elem_from_json(*f, Json::parse("[2]")).code(), 2U);
    EXPECT_THROW(elem_from_json(*f, Json::parse("[3]")), PreconditionError);
    EXPECT_THROW(elem_from_json(*f, Json::parse("[0,0,0,1]")), PreconditionError);
    EXPECT_THROW(elem_from_json(*f, Json(27)), PreconditionError);
    EXPECT_THROW(elem_from_json(*f, Json("x")), PreconditionError);
}

TEST(Serialize, PolynomialsRoundTrip) {
    auto f = make_field(5, 1, 3);
    const auto g = f->generator();
    const LinPoly l(*f, {g, f->zero(), g * g});
    EXPECT_EQ(linpoly_from_json(*f, to_json(l)), l);

    ExpPoly p = ExpPoly::monomial(*f, 124, g);
    p.add_term(-1, f->one());
    p.add_term(26, g * g);
    const Json j = to_json(p);
    EXPECT_TRUE(j[0]["exp"].is_string());
    const ExpPoly back = exppoly_from_json(*f, j);
    EXPECT_EQ(back.terms(), p.terms());
    EXPECT_EQ(tabulate(back), tabulate(p));
}

TEST(Serialize, ExponentsAreExactDecimalStrings) {
    auto f = make_field(3, 1, 3);
    // Exponents beyond 64 bits reduce mod q^n - 1 into [1, q^n - 1].
    const Json j = Json::parse(R"([{"exp":"1000000000000000000000000000000","coeff":[1]}])");
    const ExpPoly p = exppoly_from_json(*f, j);
    const BigInt e("1000000000000000000000000000000");
    const BigInt r = e % 26;
    EXPECT_EQ(BigInt(p.terms().at(0).exp), r == 0 ? BigInt(26) : r);
}

TEST(Serialize, CycIntRoundTrip) {
    auto f = make_field(3, 1, 3);
    const CycInt g = gauss_sum(*f);
    const Json j = to_json(g);
    EXPECT_EQ(j["p"], 3);
    EXPECT_EQ(j["coeffs"].size(), 2U);
    EXPECT_EQ(cycint_from_json(j), g);
}

TEST(Serialize, ReportShapeAndReplayArgs) {
    auto f = make_field(3, 1, 3);
    const auto a = f->generator() * f->generator();
    const auto inst = family_thm_rs(f, a);
    ASSERT_TRUE(inst.verified());
    const Json j = to_json(inst);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    EXPECT_EQ(keys.front(), "family_id");
    EXPECT_EQ(j["family_id"], "THM_RS_INVERSE");
    EXPECT_EQ(j["field"], Json::parse(R"({"p":3,"e":1,"n":3})"));
    EXPECT_TRUE(j["forward"].contains("poly"));
    EXPECT_TRUE(j["verified"].get<bool>());
    for (const auto& c : j["checks"]) EXPECT_TRUE(c["pass"].get<bool>());

    const ReportSummary s = summary_from_json(j);
    EXPECT_EQ(s.id, FamilyId::THM_RS_INVERSE);
    const auto again = rebuild(s);
    EXPECT_EQ(to_json(again).dump(), j.dump());
}

TEST(Serialize, TablesAndWitnesses) {
    auto f = make_field(5, 1, 3);
    const auto inst = family_e1(f, f->generator());
    const Json j = to_json(inst);
    bool saw_table = false;
    for (const char* side : {"forward", "inverse"})
        if (j[side].contains("table")) {
            saw_table = true;
            EXPECT_EQ(j[side]["table"].size(), 125U);
        }
    ReportOptions small;
    small.table_limit = 8;
    const Json k = to_json(inst, small);
    for (const char* side : {"forward", "inverse"}) EXPECT_FALSE(k[side].contains("table"));
    EXPECT_TRUE(saw_table);

    Check c = check_bool("x", false);
    c.witness.emplace_back("x1", f->one());
    const Json cj = to_json(c);
    EXPECT_EQ(cj["witness"]["x1"], Json::parse("[1,0,0]"));
    EXPECT_FALSE(cj.contains("note"));
}

TEST(Serialize, ArgsFromParams) {
    auto f = make_field(3, 1, 4);
    const Json p = Json::parse(R"({"L":[[1],[0],[2]],"beta":5,"k":2,"variant":"base","form":2,"alpha_choice":1})");
    const auto args = args_from_json(f.get(), p);
    ASSERT_TRUE(args.L && args.beta && args.k && args.variant && args.form && args.alpha);
    EXPECT_EQ(args.L->coeff(2), f->from_int(2));
    EXPECT_EQ(args.beta->code(), 5U);
    EXPECT_EQ(*args.alpha, 1);
    EXPECT_THROW(args_from_json(f.get(), Json::parse(R"({"zeta":1})")), PreconditionError);
    EXPECT_THROW(args_from_json(f.get(), Json::parse(R"({"k":"two"})")), PreconditionError);
}
