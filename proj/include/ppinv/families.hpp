#pragma once

// Constructors for the permutation families with explicit inverses.
//
// Constructors throw PreconditionError when the stated parameter conditions
// fail. Everything after the gate is a verification: each one is recorded as
// a Check, and a failing check is reported rather than thrown, with the
// offending element(s) attached as a witness.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ppinv/bigint.hpp"
#include "ppinv/characters.hpp"
#include "ppinv/error.hpp"
#include "ppinv/exppoly.hpp"
#include "ppinv/field.hpp"
#include "ppinv/linpoly.hpp"
#include "ppinv/scan.hpp"

namespace ppinv {

enum class FamilyId {
    E0_TRINOMIAL,
    PROP_FIRST,
    PROP_SECOND,
    THM_RS_INVERSE,
    THM_RECIPROCAL_B1,
    THM_RECIPROCAL_B2,
    COR_N2K_CASE1,
    COR_N2K_CASE2,
    COR_N2K_CASE3,
    PROP_N3_SEXTIC,
    E1_FAMILY,
    F4K_EXAMPLE,
    CONCLUSION_1,
    CONCLUSION_2,
    CONCLUSION_3,
    CONCLUSION_4,
};

struct FamilyName {
    FamilyId id;
    std::string_view tag;   // enum spelling
    std::string_view name;  // command-line spelling
};

inline constexpr std::array<FamilyName, 16> kFamilyNames{{
    {FamilyId::E0_TRINOMIAL, "E0_TRINOMIAL", "e0"},
    {FamilyId::PROP_FIRST, "PROP_FIRST", "prop-first"},
    {FamilyId::PROP_SECOND, "PROP_SECOND", "prop-second"},
    {FamilyId::THM_RS_INVERSE, "THM_RS_INVERSE", "thm-rs"},
    {FamilyId::THM_RECIPROCAL_B1, "THM_RECIPROCAL_B1", "reciprocal-b1"},
    {FamilyId::THM_RECIPROCAL_B2, "THM_RECIPROCAL_B2", "reciprocal-b2"},
    {FamilyId::COR_N2K_CASE1, "COR_N2K_CASE1", "cor-n2k-1"},
    {FamilyId::COR_N2K_CASE2, "COR_N2K_CASE2", "cor-n2k-2"},
    {FamilyId::COR_N2K_CASE3, "COR_N2K_CASE3", "cor-n2k-3"},
    {FamilyId::PROP_N3_SEXTIC, "PROP_N3_SEXTIC", "sextic"},
    {FamilyId::E1_FAMILY, "E1_FAMILY", "e1"},
    {FamilyId::F4K_EXAMPLE, "F4K_EXAMPLE", "f4k"},
    {FamilyId::CONCLUSION_1, "CONCLUSION_1", "conclusion-1"},
    {FamilyId::CONCLUSION_2, "CONCLUSION_2", "conclusion-2"},
    {FamilyId::CONCLUSION_3, "CONCLUSION_3", "conclusion-3"},
    {FamilyId::CONCLUSION_4, "CONCLUSION_4", "conclusion-4"},
}};

inline std::string_view family_tag(FamilyId id) {
    for (const auto& f : kFamilyNames)
        if (f.id == id) return f.tag;
    throw InternalError("unknown family id");
}

inline std::string_view family_name(FamilyId id) {
    for (const auto& f : kFamilyNames)
        if (f.id == id) return f.name;
    throw InternalError("unknown family id");
}

/// Accepts either spelling.
inline std::optional<FamilyId> parse_family(std::string_view s) {
    for (const auto& f : kFamilyNames)
        if (s == f.tag || s == f.name) return f.id;
    return std::nullopt;
}

/// A map given symbolically when possible, otherwise by its values.
struct MapForm {
    std::string formula;
    std::optional<ExpPoly> poly;
    std::optional<ValueTable> table;

    bool empty() const noexcept { return !poly && !table; }
    ValueTable values(const ScanPolicy& policy = {}) const {
        if (poly) return tabulate(*poly, policy);
        if (table) return *table;
        throw InternalError("map form '" + formula + "' has no representation");
    }
};

using ParamValue = std::variant<FieldElem, std::int64_t, std::string, LinPoly>;

struct Param {
    std::string name;
    ParamValue value;
};

struct Check {
    std::string name;
    bool pass = false;
    std::vector<std::pair<std::string, FieldElem>> witness;
    std::string note;
};

struct FamilyInstance {
    FamilyId id{};
    Field field;
    std::vector<Param> params;
    MapForm forward;
    MapForm inverse;
    /// Second (forward, inverse) pair that the same statement yields, if any.
    std::optional<std::pair<MapForm, MapForm>> companion;
    std::vector<Check> checks;
    std::vector<std::string> notes;

    bool verified() const {
        return !checks.empty() &&
               std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
    const Check* check(std::string_view name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
    const Param* param(std::string_view name) const {
        for (const auto& p : params)
            if (p.name == name) return &p;
        return nullptr;
    }
};

// ---- check builders -------------------------------------------------------

inline Check check_bool(std::string name, bool ok, std::string note = {}) {
    return Check{std::move(name), ok, {}, std::move(note)};
}

inline Check check_permutation(std::string name, const ValueTable& t) {
    const auto r = is_permutation(t);
    Check c{std::move(name), r.ok, {}, {}};
    if (!r.ok) c.witness = {{"x1", r.collision->first}, {"x2", r.collision->second}};
    return c;
}

inline Check check_inverse(std::string name, const ValueTable& f, const ValueTable& g) {
    const auto r = verify_inverse(f, g);
    Check c{std::move(name), r.ok, {}, {}};
    if (!r.ok) {
        c.witness = {{"x", *r.witness}};
        c.note = r.direction + " != x";
    }
    return c;
}

inline Check check_same_map(std::string name, const ValueTable& a, const ValueTable& b) {
    const auto d = first_difference(a, b);
    Check c{std::move(name), !d.has_value(), {}, {}};
    if (d) c.witness = {{"x", *d}};
    return c;
}

/// Exact equality of two sparse forms; a mismatch is also located pointwise when possible.
inline Check check_same_poly(std::string name, const ExpPoly& a, const ExpPoly& b, const ScanPolicy& policy = {}) {
    Check c{std::move(name), a == b, {}, {}};
    if (!c.pass) {
        c.note = "forms differ: " + a.str() + " vs " + b.str();
        if (a.ctx().order() <= policy.bound)
            if (auto d = first_difference(tabulate(a, policy), tabulate(b, policy))) c.witness = {{"x", *d}};
    }
    return c;
}

inline Check check_same_linpoly(std::string name, const LinPoly& a, const LinPoly& b) {
    Check c{std::move(name), a == b, {}, {}};
    if (!c.pass) {
        for (std::uint32_t i = 0; i < a.n(); ++i)
            if (a.coeff(i) != b.coeff(i)) {
                c.note = "coefficient of x^{q^" + std::to_string(i) + "} differs";
                c.witness = {{"lhs", a.coeff(i)}, {"rhs", b.coeff(i)}};
                break;
            }
    }
    return c;
}

namespace detail {

inline ExpPoly mono(const FieldCtx& f, const BigInt& e, const FieldElem& c) { return ExpPoly::monomial(f, e, c); }

/// L(x^{q+1}) / x
inline ExpPoly lin_q1_over_x(const LinPoly& l) {
    const auto& f = l.ctx();
    return linpoly_at_power(l, BigInt(f.q()) + 1).times_monomial(-1);
}

/// L(x) / x^{q+1}
inline ExpPoly lin_over_xq1(const LinPoly& l) {
    return linpoly_as_exppoly(l).times_monomial(-(BigInt(l.ctx().q()) + 1));
}

/// x^{-1} / M(x^{-q-1}), raised to q^frob in the denominator.
inline ValueTable reciprocal_table(const LinPoly& m, std::uint64_t frob, const ScanPolicy& policy) {
    const auto& f = m.ctx();
    const std::uint64_t q1 = f.q() + 1;
    return tabulate_codes(
        f,
        [&](Code x) {
            const Code xi = f.inv(x);
            const Code d = f.frob(m.eval_code(f.pow(xi, q1)), frob);
            return f.mul(xi, f.inv(d));
        },
        policy);
}

inline std::uint32_t q_odd_required(const FieldCtx& f, const char* what) {
    if (f.p() == 2) throw PreconditionError(std::string(what) + " requires odd q");
    return f.p();
}

inline void require_n(const FieldCtx& f, std::uint32_t n, const char* what) {
    if (f.n() != n) throw PreconditionError(std::string(what) + " requires n=" + std::to_string(n));
}

inline void require_nonzero(const FieldElem& a, const char* name) {
    if (a.is_zero()) throw PreconditionError(std::string(name) + " must be nonzero");
}

inline void require_norm_neg_not_one(const FieldElem& a) {
    require_nonzero(a, "a");
    if (norm_rel(-a).is_one()) throw PreconditionError("N(-a) = 1");
}

inline void require_ctx(const Field& field, const FieldElem& a) {
    if (a.ctx_ptr() != field.get()) throw ContextMismatch();
}

/// Shared body of the reciprocal-inverse statement once L and ℓ are fixed:
/// the pair L(x^{q+1})/x, x^{-1}/ℓ(x^{-q-1}), its companion with L and ℓ
/// exchanged, and the identity (L(x^{q+1})/x)·ℓ((x/L(x^{q+1}))^{q+1}) = x^{-1}.
inline void fill_reciprocal(FamilyInstance& inst, const LinPoly& l, const LinPoly& ell, const ScanPolicy& policy) {
    const auto& f = l.ctx();
    const std::uint64_t q1 = f.q() + 1;
    inst.forward = {"L(x^(q+1))/x", lin_q1_over_x(l), std::nullopt};
    inst.inverse = {"x^(-1)/l(x^(-q-1))", std::nullopt, reciprocal_table(ell, 0, policy)};
    MapForm cf{"l(x^(q+1))/x", lin_q1_over_x(ell), std::nullopt};
    MapForm ci{"x^(-1)/L(x^(-q-1))", std::nullopt, reciprocal_table(l, 0, policy)};

    const auto ft = inst.forward.values(policy);
    const auto ct = cf.values(policy);
    inst.checks.push_back(check_permutation("forward permutes", ft));
    inst.checks.push_back(check_inverse("inverse composes both ways", ft, *inst.inverse.table));
    inst.checks.push_back(check_permutation("companion permutes", ct));
    inst.checks.push_back(check_inverse("companion inverse composes both ways", ct, *ci.table));

    const auto lhs = tabulate_codes(
        f,
        [&](Code x) {
            const Code v = l.eval_code(f.pow(x, q1));
            const Code inner = f.pow(f.mul(x, f.inv(v)), q1);
            return f.mul(ft.values[x], ell.eval_code(inner));
        },
        policy);
    const auto rhs = tabulate_codes(f, [&](Code x) { return f.inv(x); }, policy);
    inst.checks.push_back(check_same_map("reciprocal identity", lhs, rhs));
    inst.companion = std::make_pair(std::move(cf), std::move(ci));
}

/// ℓ(x) = β^{-1} L(βx)^q as a linearized polynomial.
inline LinPoly beta_twist(const LinPoly& l, const FieldElem& beta) {
    const auto& f = l.ctx();
    LinPoly out(f);
    const FieldElem bi = inv(beta);
    for (std::uint32_t i = 0; i < f.n(); ++i) {
        if (l.coeff(i).is_zero()) continue;
        out.add_to(i + 1, bi * frob_q(l.coeff(i), 1) * frob_q(beta, i + 1));
    }
    return out;
}

/// Hypothesis scans of the second branch. Returns true when all of them pass.
inline bool branch2_hypotheses(FamilyInstance& inst, const LinPoly& l, const FieldElem& beta, std::uint32_t k,
                               const LinPoly& ell, const ScanPolicy& policy) {
    const auto& f = l.ctx();
    const std::uint64_t q1 = f.q() + 1;
    require_scannable(f.order(), policy);
    const FieldElem bi = inv(beta);

    Check image{"image of L(x^(q+1))^(q+1) lies in beta*F_(q^k)", true, {}, {}};
    Check roots{"L(x^(q+1)) has no root in F*", true, {}, {}};
    for (auto x : enumerate(f)) {
        const FieldElem v = l(pow(x, q1));
        if (image.pass) {
            const FieldElem w = bi * pow(v, q1);
            if (frob_q(w, k) != w) {
                image.pass = false;
                image.witness = {{"x", x}, {"value", pow(v, q1)}};
            }
        }
        if (roots.pass && !x.is_zero() && v.is_zero()) {
            roots.pass = false;
            roots.witness = {{"x", x}};
        }
        if (!image.pass && !roots.pass) break;
    }
    Check linear{"l is q^k-linear", true, {}, {}};
    for (std::uint32_t i = 0; i < f.n(); ++i)
        if (i % k != 0 && !ell.coeff(i).is_zero()) {
            linear.pass = false;
            linear.note = "l has a nonzero coefficient at x^{q^" + std::to_string(i) + "}";
            linear.witness = {{"coefficient", ell.coeff(i)}};
            break;
        }
    const bool ok = image.pass && roots.pass && linear.pass;
    inst.checks.push_back(std::move(image));
    inst.checks.push_back(std::move(linear));
    inst.checks.push_back(std::move(roots));
    return ok;
}

inline std::vector<std::uint32_t> divisors(std::uint32_t n) {
    std::vector<std::uint32_t> d;
    for (std::uint32_t i = 1; i <= n; ++i)
        if (n % i == 0) d.push_back(i);
    return d;
}

}  // namespace detail

// ---- the Proposition on x^q + ax and x^{q^{n-1}} + ax ----------------------

/// PROP_FIRST: L^{-1}(x^{q+1})/x with L = x^q + ax.
/// PROP_SECOND: L^{-1}(x)/x^{q+1} with L = x^{q^{n-1}} + ax.
inline FamilyInstance family_prop(const Field& field, const FieldElem& a, int variant, const ScanPolicy& policy = {}) {
    const auto& f = *field;
    detail::require_ctx(field, a);
    if (variant != 1 && variant != 2) throw PreconditionError("proposition variant must be 1 or 2");
    detail::require_norm_neg_not_one(a);
    require_scannable(f.order(), policy);
    FamilyInstance inst;
    inst.id = variant == 1 ? FamilyId::PROP_FIRST : FamilyId::PROP_SECOND;
    inst.field = field;
    inst.params = {{"a", a}};
    if (f.n() % 2 == 0) inst.notes.push_back("even n: exercises the claim for arbitrary n");

    if (variant == 1) {
        const LinPoly linv = lp_invert_binomial(f, 1, a);
        inst.forward = {"L^(-1)(x^(q+1))/x, L = x^q + a x", detail::lin_q1_over_x(linv), std::nullopt};
        // Same pair as the first reciprocal branch: the inverse is x^{-1}/ℓ(x^{-q-1}), ℓ = (ax^q + x)^{-1}.
        const LinPoly ell = lp_invert(LinPoly(f, {f.one(), a}));
        inst.inverse = {"x^(-1)/l(x^(-q-1)), l = (a x^q + x)^(-1)", std::nullopt,
                        detail::reciprocal_table(ell, 0, policy)};
        const auto direct = linpoly_as_exppoly(LinPoly::binomial(f, 1, a)).times_monomial(-(BigInt(f.q()) + 1));
        inst.checks.push_back(check_same_poly("L(x)/x^(q+1) = x^(-1) + a x^(-q)", direct,
                                              detail::mono(f, -1, f.one()) +
                                                  detail::mono(f, -BigInt(f.q()), a),
                                              policy));
        inst.checks.push_back(check_permutation("L(x)/x^(q+1) permutes", tabulate(direct, policy)));
    } else {
        const LinPoly linv = lp_invert_binomial(f, f.n() - 1, a);
        inst.forward = {"L^(-1)(x)/x^(q+1), L = x^(q^(n-1)) + a x", detail::lin_over_xq1(linv), std::nullopt};
        inst.inverse = {"table inverse", std::nullopt, map_inverse_table(*inst.forward.poly, policy)};
        inst.notes.push_back("inverse obtained by table inversion");
    }
    const auto ft = inst.forward.values(policy);
    inst.checks.push_back(check_permutation("forward permutes", ft));
    if (variant == 1) inst.checks.push_back(check_inverse("inverse composes both ways", ft, *inst.inverse.table));
    return inst;
}

// ---- the r, s theorem -----------------------------------------------------

struct RsExponents {
    BigInt r;
    BigInt s;
};

/// r = Σ_{i=0}^{(n-1)/2} q^{2i}, s = Σ_{i=1}^{(n-1)/2} q^{2i-1}
inline RsExponents rs_exponents(std::uint64_t q, std::uint32_t n) {
    if (n % 2 == 0) throw PreconditionError("r, s exponents need odd n");
    RsExponents e{0, 0};
    for (std::uint32_t i = 0; i <= (n - 1) / 2; ++i) e.r += big_pow(q, 2ULL * i);
    for (std::uint32_t i = 1; i <= (n - 1) / 2; ++i) e.s += big_pow(q, 2ULL * i - 1);
    return e;
}

inline FamilyInstance family_thm_rs(const Field& field, const FieldElem& a, const ScanPolicy& policy = {}) {
    const auto& f = *field;
    detail::require_ctx(field, a);
    if (f.n() % 2 == 0) throw PreconditionError("r,s theorem requires odd n");
    detail::require_norm_neg_not_one(a);
    require_scannable(f.order(), policy);
    const std::uint32_t n = f.n();
    const BigInt q = f.q();
    const auto [r, s] = rs_exponents(f.q(), n);

    const LinPoly lbin = LinPoly::binomial(f, n - 1, a);  // L^{-1}
    const LinPoly l = lp_invert_binomial(f, n - 1, a);
    LinPoly ellinv(f);  // x^{q^{n-1}} + a x^q
    ellinv.add_to(n - 1, f.one());
    ellinv.add_to(1, a);
    const LinPoly ell = lp_invert(ellinv);

    FamilyInstance inst;
    inst.id = FamilyId::THM_RS_INVERSE;
    inst.field = field;
    inst.params = {{"a", a}};
    inst.forward = {"L(x)/x^(q+1), L = (x^(q^(n-1)) + a x)^(-1)", detail::lin_over_xq1(l), std::nullopt};
    inst.inverse = {"l(x^s)/x^r, l = (x^(q^(n-1)) + a x^q)^(-1)",
                    linpoly_at_power(ell, s).times_monomial(-r), std::nullopt};

    inst.checks.push_back(check_bool("r = 1 + q*s", r == 1 + q * s));
    const auto ft = inst.forward.values(policy);
    const auto it = inst.inverse.values(policy);
    inst.checks.push_back(check_permutation("forward permutes", ft));
    inst.checks.push_back(check_inverse("inverse composes both ways", ft, it));

    const std::uint64_t su = reduce_exponent(f, s);
    const std::uint64_t ru = reduce_exponent(f, r);
    const auto lhs = tabulate_codes(f, [&](Code x) { return f.mul(lbin.eval_code(x), f.pow(x, su)); }, policy);
    const auto rhs = tabulate_codes(f, [&](Code x) { return ellinv.eval_code(f.pow(x, ru)); }, policy);
    inst.checks.push_back(check_same_map("L^(-1)(x) x^s = l^(-1)(x^r)", lhs, rhs));

    if (n == 3) {
        const FieldElem nm1 = norm_rel(a) + f.one();
        const FieldElem c = inv(nm1);
        const FieldElem a1 = frob_q(a, 1), a2 = frob_q(a, 2);
        inst.checks.push_back(check_same_linpoly("L display", l, LinPoly(f, {c * a2 * a1, c, -(c * a1)})));
        inst.checks.push_back(
            check_same_linpoly("l display", ell, LinPoly(f, {-(c * a1), c, c * a1 * a})));
        const ExpPoly fwd = detail::mono(f, q * q - q - 1, -a1) + detail::mono(f, -1, f.one()) +
                            detail::mono(f, -q, a2 * a1);
        const ExpPoly bwd = detail::mono(f, -(q * q), a1 * a) + detail::mono(f, -1, f.one()) +
                            detail::mono(f, q - q * q - 1, -a1);
        inst.checks.push_back(check_same_poly("(N(a)+1) forward display", nm1 * *inst.forward.poly, fwd, policy));
        inst.checks.push_back(check_same_poly("(N(a)+1) inverse display", nm1 * *inst.inverse.poly, bwd, policy));
    }
    return inst;
}

// ---- reciprocal-inverse theorem --------------------------------------------

inline FamilyInstance family_reciprocal_b1(const Field& field, const FieldElem& a, const ScanPolicy& policy = {}) {
    const auto& f = *field;
    detail::require_ctx(field, a);
    detail::require_norm_neg_not_one(a);
    require_scannable(f.order(), policy);
    const LinPoly l = lp_invert_binomial(f, 1, a);
    const LinPoly ell = lp_invert(LinPoly(f, {f.one(), a}));  // (a x^q + x)^{-1}
    FamilyInstance inst;
    inst.id = FamilyId::THM_RECIPROCAL_B1;
    inst.field = field;
    inst.params = {{"a", a}};
    detail::fill_reciprocal(inst, l, ell, policy);
    return inst;
}

/// Second branch with caller-supplied L, β and k. Hypothesis failures are
/// reported as failing checks with witnesses; the conclusions are only
/// evaluated when every hypothesis holds.
inline FamilyInstance family_reciprocal_b2(const Field& field, const LinPoly& l, const FieldElem& beta,
                                           std::uint32_t k, const ScanPolicy& policy = {}) {
    const auto& f = *field;
    if (&l.ctx() != field.get()) throw ContextMismatch();
    detail::require_ctx(field, beta);
    detail::require_nonzero(beta, "beta");
    if (k == 0 || f.n() % k != 0) throw PreconditionError("k must divide n");
    FamilyInstance inst;
    inst.id = FamilyId::THM_RECIPROCAL_B2;
    inst.field = field;
    inst.params = {{"L", l}, {"beta", beta}, {"k", std::int64_t{k}}};
    const LinPoly ell = detail::beta_twist(l, beta);
    if (detail::branch2_hypotheses(inst, l, beta, k, ell, policy)) {
        detail::fill_reciprocal(inst, l, ell, policy);
    } else {
        inst.forward = {"L(x^(q+1))/x", detail::lin_q1_over_x(l), std::nullopt};
        inst.notes.push_back("hypotheses fail; conclusions not evaluated");
    }
    return inst;
}

// ---- corollary for n = 2k ----------------------------------------------------

/// L(x) = (bx)^{q^{n-1}} + (bx)^{q^{k-1}}
inline LinPoly cor_n2k_linpoly(const FieldCtx& f, const FieldElem& b) {
    const std::uint32_t n = f.n(), k = n / 2;
    LinPoly l(f);
    l.add_to(n - 1, frob_q(b, n - 1));
    l.add_to(k - 1, frob_q(b, k - 1));
    return l;
}

/// L(x) = (ax^q)^{q^2} + (bx)^{q^2} + ax^q + bx
inline LinPoly cor_case3_linpoly(const FieldCtx& f, const FieldElem& a, const FieldElem& b) {
    return LinPoly(f, {b, a, frob_q(b, 2), frob_q(a, 2)});
}

namespace detail {

inline void gate_cor_n2k(const FieldCtx& f, int which, const FieldElem& b, const std::optional<FieldElem>& a) {
    if (f.n() % 2 != 0) throw PreconditionError("corollary requires even n");
    const std::uint32_t k = f.n() / 2;
    require_nonzero(b, "b");
    switch (which) {
    case 1:
        if (k % 2 == 0) throw PreconditionError("case 1 requires k odd");
        if (pow(b, f.mult_order() / (f.q() + 1)) == -f.one())
            throw PreconditionError("case 1 requires b^((q^n-1)/(q+1)) != -1");
        break;
    case 2:
        if (k % 2 != 0) throw PreconditionError("case 2 requires k even");
        if (f.p() == 2) throw PreconditionError("case 2 requires odd q");
        if (!is_square(b)) throw PreconditionError("case 2 requires b to be a square");
        break;
    case 3:
        if (f.n() != 4) throw PreconditionError("case 3 requires n=4");
        if (f.p() == 2) throw PreconditionError("case 3 requires odd q");
        if (!a) throw PreconditionError("case 3 requires a");
        require_nonzero(*a, "a");
        if (!is_square(*a)) throw PreconditionError("case 3 requires a to be a square");
        if (!is_square(b)) throw PreconditionError("case 3 requires b to be a square");
        if (!in_subfield(*a * inv(frob_q(b, 1)), 2)) throw PreconditionError("case 3 requires a*b^(-q) in F_(q^2)");
        if (norm_rel(*a) == norm_rel(b)) throw PreconditionError("case 3 requires N(a) != N(b)");
        break;
    default:
        throw PreconditionError("corollary case must be 1, 2 or 3");
    }
}

}  // namespace detail

/// Cases 1 and 2 take b; case 3 takes (a, b). The image subfield is F_{q^k}
/// with k = n/2 for cases 1 and 2 and F_q for case 3, always with β = 1.
inline FamilyInstance family_cor_n2k(const Field& field, int which, const FieldElem& b,
                                     const std::optional<FieldElem>& a = std::nullopt,
                                     const ScanPolicy& policy = {}) {
    const auto& f = *field;
    detail::require_ctx(field, b);
    if (a) detail::require_ctx(field, *a);
    detail::gate_cor_n2k(f, which, b, a);
    require_scannable(f.order(), policy);
    const LinPoly l = which == 3 ? cor_case3_linpoly(f, *a, b) : cor_n2k_linpoly(f, b);
    const std::uint32_t k = which == 3 ? 1 : f.n() / 2;

    FamilyInstance inst;
    inst.id = which == 1 ? FamilyId::COR_N2K_CASE1 : which == 2 ? FamilyId::COR_N2K_CASE2 : FamilyId::COR_N2K_CASE3;
    inst.field = field;
    if (a) inst.params.push_back({"a", *a});
    inst.params.push_back({"b", b});
    inst.params.push_back({"k", std::int64_t{k}});
    const LinPoly ell = detail::beta_twist(l, f.one());
    inst.checks.push_back(check_same_linpoly("l = L^q", ell, LinPoly(f, [&] {
        std::vector<FieldElem> c(f.n(), f.zero());
        for (std::uint32_t i = 0; i < f.n(); ++i) c[(i + 1) % f.n()] = frob_q(l.coeff(i), 1);
        return c;
    }())));
    if (detail::branch2_hypotheses(inst, l, f.one(), k, ell, policy)) {
        detail::fill_reciprocal(inst, l, ell, policy);
        inst.inverse.formula = "x^(-1)/L(x^(-q-1))^q";
        const auto stated = detail::reciprocal_table(l, 1, policy);
        inst.checks.push_back(check_same_map("x^(-1)/L(x^(-q-1))^q = x^(-1)/l(x^(-q-1))", stated, *inst.inverse.table));
    } else {
        inst.forward = {"L(x^(q+1))/x", detail::lin_q1_over_x(l), std::nullopt};
        inst.notes.push_back("hypotheses fail; conclusions not evaluated");
    }
    return inst;
}

// ---- n = 3 sextic proposition ----------------------------------------------

inline FamilyInstance family_sextic(const Field& field, const FieldElem& a, const ScanPolicy& policy = {}) {
    const auto& f = *field;
    detail::require_ctx(field, a);
    detail::require_n(f, 3, "sextic proposition");
    detail::q_odd_required(f, "sextic proposition");
    detail::require_nonzero(a, "a");
    const FieldElem nm = norm_rel(a);
    if (nm == -f.one()) throw PreconditionError("N(a) = -1");
    require_scannable(f.order(), policy);

    const BigInt q = f.q();
    const BigInt q2 = q * q, q3 = q2 * q, q4 = q3 * q;
    const BigInt h42 = exact_half(q4 + q2), h31 = exact_half(q3 + q), h21 = exact_half(q2 + 1);
    const FieldElem one = f.one(), two = f.from_int(2);
    const FieldElem a1 = frob_q(a, 1), a2 = frob_q(a, 2);
    const FieldElem d = inv((nm + one) * (nm + one));

    FamilyInstance inst;
    inst.id = FamilyId::PROP_N3_SEXTIC;
    inst.field = field;
    inst.params = {{"a", a}};
    inst.forward = {"x^(q^2-q+1) + 2a x + a^2 x^(q^3-q^2+q)",
                    detail::mono(f, q2 - q + 1, one) + detail::mono(f, 1, two * a) +
                        detail::mono(f, q3 - q2 + q, a * a),
                    std::nullopt};
    inst.inverse = {"six-term inverse over (N(a)+1)^2",
                    d * (detail::mono(f, q2, -(a1 * a1 * a)) + detail::mono(f, 1, a2 * a1) +
                         detail::mono(f, q, -a) + detail::mono(f, h42, two * a1 * a) +
                         detail::mono(f, h31, one - nm) + detail::mono(f, h21, (nm - one) * a1)),
                    std::nullopt};
    const auto ft = inst.forward.values(policy);
    inst.checks.push_back(check_permutation("forward permutes", ft));
    inst.checks.push_back(check_inverse("inverse composes both ways", ft, inst.inverse.values(policy)));

    // f(x) = (x^{q^2} + a x^q)^2 / x^{q^2+q-1}
    const LinPoly base(f, {f.zero(), a, one});
    const ExpPoly sq = linpoly_as_exppoly(base) * linpoly_as_exppoly(base);
    inst.checks.push_back(check_same_map("f = (x^(q^2) + a x^q)^2 / x^(q^2+q-1)",
                                         tabulate(sq.times_monomial(-(q2 + q - 1)), policy), ft));
    // g(f(x)) = -a^{-q^2}(N(a)+1)(x^{q^2} + a x^q)
    const ExpPoly g = detail::mono(f, 1, one) + detail::mono(f, h21, -inv(a2)) + detail::mono(f, h31, -a);
    const auto gf = compose_tables(tabulate(g, policy), ft);
    const FieldElem c = -(inv(a2) * (nm + one));
    inst.checks.push_back(check_same_map("g(f(x)) = -a^(-q^2)(N(a)+1)(x^(q^2) + a x^q)", gf,
                                         tabulate(lp_scale(c, base), policy)));
    return inst;
}

// ---- Example e0 ------------------------------------------------------------

enum class E0Variant { Base, QthPower, HalfExponent };

inline std::string_view e0_variant_name(E0Variant v) {
    switch (v) {
    case E0Variant::Base: return "base";
    case E0Variant::QthPower: return "qth-power";
    case E0Variant::HalfExponent: return "half-exponent";
    }
    return "base";
}

inline std::optional<E0Variant> parse_e0_variant(std::string_view s) {
    if (s == "base") return E0Variant::Base;
    if (s == "qth-power") return E0Variant::QthPower;
    if (s == "half-exponent") return E0Variant::HalfExponent;
    return std::nullopt;
}

inline FamilyInstance family_e0(const Field& field, const FieldElem& a, E0Variant variant,
                                const ScanPolicy& policy = {}) {
    const auto& f = *field;
    detail::require_ctx(field, a);
    detail::require_n(f, 3, "e0");
    if (variant == E0Variant::HalfExponent) detail::q_odd_required(f, "e0 half-exponent variant");
    detail::require_nonzero(a, "a");
    const FieldElem nm = norm_rel(a);
    if (nm == -f.one()) throw PreconditionError("N(a) = -1");
    require_scannable(f.order(), policy);

    const BigInt q = f.q();
    const BigInt q2 = q * q, q3 = q2 * q;
    const FieldElem one = f.one();
    const FieldElem a1 = frob_q(a, 1), a2 = frob_q(a, 2);
    const FieldElem c = nm + one;

    // base = (N(a)+1) · L(x^{q+1})/x with L = (x^q + ax)^{-1}, inverted through ℓ = (ax^q + x)^{-1}.
    const LinPoly l = lp_invert_binomial(f, 1, a);
    const LinPoly ell = lp_invert(LinPoly(f, {one, a}));
    const ExpPoly base = detail::mono(f, q2, one) + detail::mono(f, q2 + q - 1, -a2) + detail::mono(f, q, a2 * a1);
    const ValueTable g_recip = detail::reciprocal_table(ell, 0, policy);
    const FieldElem ci = inv(c);
    const ValueTable base_inv = tabulate_codes(f, [&](Code y) { return g_recip.values[f.mul(y, ci.code())]; }, policy);

    FamilyInstance inst;
    inst.id = FamilyId::E0_TRINOMIAL;
    inst.field = field;
    inst.params = {{"a", a}, {"variant", std::string(e0_variant_name(variant))}};

    switch (variant) {
    case E0Variant::Base: {
        inst.forward = {"x^(q^2) - a^(q^2) x^(q^2+q-1) + a^(q^2+q) x^q", base, std::nullopt};
        inst.inverse = {"y -> x^(-1)/l(x^(-q-1)) at x = y/(N(a)+1), l = (a x^q + x)^(-1)", std::nullopt, base_inv};
        const ExpPoly frac = ep_from_fraction(detail::mono(f, q2 + 1, one) + detail::mono(f, q2 + q, -a2) +
                                                  detail::mono(f, q + 1, a2 * a1),
                                              ExpPoly::x(f));
        inst.checks.push_back(check_same_poly("fraction display reduces to the trinomial", frac, base, policy));
        inst.checks.push_back(
            check_same_poly("trinomial = (N(a)+1) L(x^(q+1))/x", c * detail::lin_q1_over_x(l), base, policy));
        break;
    }
    case E0Variant::QthPower: {
        const ExpPoly fq = detail::mono(f, 1, one) + detail::mono(f, q2 - q + 1, -a) + detail::mono(f, q2, a2 * a);
        inst.forward = {"x - a x^(q^2-q+1) + a^(q^2+1) x^(q^2)", fq, std::nullopt};
        // base(x)^q = y  <=>  base(x) = y^{q^2}
        inst.inverse = {"y -> base^(-1)(y^(q^2))", std::nullopt,
                        tabulate_codes(f, [&](Code y) { return base_inv.values[f.frob(y, 2)]; }, policy)};
        inst.checks.push_back(check_same_poly("q-th power of the trinomial", base.frobenius(1), fq, policy));
        break;
    }
    case E0Variant::HalfExponent: {
        const BigInt m = exact_half(q3 + q);
        const BigInt h21 = exact_half(q2 + 1);
        const BigInt mprime = q2 - q + 1;
        const BigInt ord = q3 - 1;
        const ExpPoly fq = detail::mono(f, 1, one) + detail::mono(f, q2 - q + 1, -a) + detail::mono(f, q2, a2 * a);
        const ExpPoly h = detail::mono(f, m, one) + detail::mono(f, 1, -a) + detail::mono(f, h21, a2 * a);
        inst.forward = {"x^((q^3+q)/2) - a x + a^(q^2+1) x^((q^2+1)/2)", h, std::nullopt};
        const std::uint64_t mp = reduce_exponent(f, mprime);
        const ValueTable fq_inv = tabulate_codes(f, [&](Code y) { return base_inv.values[f.frob(y, 2)]; }, policy);
        inst.inverse = {"y -> (qth-power inverse of y)^(q^2-q+1)", std::nullopt,
                        tabulate_codes(f, [&](Code y) { return f.pow(fq_inv.values[y], mp); }, policy)};
        inst.checks.push_back(check_bool("gcd((q^2+1)/2, q^3-1) = 1", big_gcd(h21, ord) == 1));
        inst.checks.push_back(check_bool("(q^2+1)/2 (q^2-q+1) q = 1 mod q^3-1", (h21 * mprime * q) % ord == 1));
        inst.checks.push_back(check_same_poly("substituting x^((q^3+q)/2) into the q-th power",
                                              fq.substitute_power(m), h, policy));
        break;
    }
    }
    const auto ft = inst.forward.values(policy);
    inst.checks.push_back(check_permutation("forward permutes", ft));
    inst.checks.push_back(check_inverse("inverse composes both ways", ft, *inst.inverse.table));
    return inst;
}

// ---- character-sum corollary -----------------------------------------------

struct CorS3Report {
    std::vector<Check> hypotheses;
    std::optional<Check> conclusion;  ///< only evaluated when every hypothesis holds
    bool hypotheses_hold() const {
        return std::all_of(hypotheses.begin(), hypotheses.end(), [](const Check& c) { return c.pass; });
    }
    bool pass() const { return hypotheses_hold() && conclusion && conclusion->pass; }
};

/// If x^s ℓ'(x)^q = α h(x)^{s0} + β h(x)^{s0 q^2} with h a permutation,
/// N(α) + N(β) != 0 and gcd(s0, q^n-1) = gcd(1+s, q^n-1), then ℓ(x)/x^{q+1}
/// permutes.
inline CorS3Report check_cor_s3(const LinPoly& ell, const ExpPoly& h, const FieldElem& alpha, const FieldElem& beta,
                                const BigInt& s0, const ScanPolicy& policy = {}) {
    const auto& f = ell.ctx();
    require_odd_q_n(f, "check_cor_s3");
    if (&h.ctx() != &f || alpha.ctx_ptr() != &f || beta.ctx_ptr() != &f) throw ContextMismatch();
    require_scannable(f.order(), policy);
    CorS3Report rep;
    const BigInt s = weil_exponent_s(f);
    const BigInt ord = f.mult_order();
    const BigInt s0abs = s0 < 0 ? BigInt(-s0) : s0;
    rep.hypotheses.push_back(check_bool("gcd(s0, q^n-1) = gcd(1+s, q^n-1)", big_gcd(s0abs, ord) == big_gcd(1 + s, ord)));
    rep.hypotheses.push_back(check_bool("N(alpha) + N(beta) != 0", !(norm_rel(alpha) + norm_rel(beta)).is_zero()));
    const auto ht = tabulate(h, policy);
    rep.hypotheses.push_back(check_permutation("h permutes", ht));

    const LinPoly ellt = transpose(ell);
    const std::uint64_t su = reduce_exponent(f, s);
    const BigInt q2 = q_pow(f, 2);
    const auto lhs = tabulate_codes(f, [&](Code x) { return f.mul(f.pow(x, su), f.frob(ellt.eval_code(x), 1)); },
                                    policy);
    const auto rhs = tabulate_map(
        f,
        [&](const FieldElem& x) {
            const FieldElem hx(&f, ht.values[x.code()]);
            return alpha * pow(hx, s0) + beta * pow(hx, s0 * q2);
        },
        policy);
    rep.hypotheses.push_back(check_same_map("x^s l'(x)^q = alpha h^s0 + beta h^(s0 q^2)", lhs, rhs));
    if (rep.hypotheses_hold())
        rep.conclusion = check_permutation("l(x)/x^(q+1) permutes", tabulate(detail::lin_over_xq1(ell), policy));
    return rep;
}

// ---- Example e1 ------------------------------------------------------------

/// ℓ(x) = (N(a)+1) x^{q^2} + 2a^q x^q + 2a^{q+1} x
inline LinPoly e1_linpoly(const FieldCtx& f, const FieldElem& a) {
    const FieldElem two = f.from_int(2);
    const FieldElem a1 = frob_q(a, 1);
    return LinPoly(f, {two * a1 * a, two * a1, norm_rel(a) + f.one()});
}

inline FamilyInstance family_e1(const Field& field, const FieldElem& a, const ScanPolicy& policy = {}) {
    const auto& f = *field;
    detail::require_ctx(field, a);
    detail::require_n(f, 3, "e1");
    detail::q_odd_required(f, "e1");
    detail::require_nonzero(a, "a");
    const FieldElem nm = norm_rel(a);
    if ((nm * nm).is_one()) throw PreconditionError("N(a)^2 = 1");
    require_scannable(f.order(), policy);

    const BigInt q = f.q();
    const BigInt q2 = q * q;
    const FieldElem one = f.one(), two = f.from_int(2);
    const FieldElem a1 = frob_q(a, 1), a2 = frob_q(a, 2);
    const LinPoly ell = e1_linpoly(f, a);
    const LinPoly ellt = transpose(ell);
    const LinPoly h(f, {one, a2, a2 * a});

    FamilyInstance inst;
    inst.id = FamilyId::E1_FAMILY;
    inst.field = field;
    inst.params = {{"a", a}};
    inst.forward = {"l(x)/x^(q+1)", detail::lin_over_xq1(ell), std::nullopt};
    const auto ft = inst.forward.values(policy);
    inst.checks.push_back(check_permutation("l(x)/x^(q+1) permutes", ft));
    if (!inst.checks.back().pass) throw InternalError("e1 forward map is not a permutation");
    inst.inverse = {"table inverse", std::nullopt, map_inverse_table(ft)};
    MapForm cf{"l'(x^(q+1))/x", detail::lin_q1_over_x(ellt), std::nullopt};
    const auto ct = cf.values(policy);
    inst.checks.push_back(check_permutation("l'(x^(q+1))/x permutes", ct));
    if (inst.checks.back().pass) inst.companion = std::make_pair(cf, MapForm{"table inverse", std::nullopt, map_inverse_table(ct)});
    inst.notes.push_back("inverses of the rational forms obtained by table inversion");

    inst.checks.push_back(check_same_linpoly("l' = 2a^(q+1) x + (N(a)+1) x^q + 2a x^(q^2)", ellt,
                                             LinPoly(f, {two * a1 * a, nm + one, two * a})));
    inst.checks.push_back(check_same_poly(
        "l(x)/x^(q+1) display", *inst.forward.poly,
        detail::mono(f, q2 - q - 1, nm + one) + detail::mono(f, -1, two * a1) + detail::mono(f, -q, two * a1 * a),
        policy));
    inst.checks.push_back(check_same_poly(
        "l'(x^(q+1))/x display", *cf.poly,
        detail::mono(f, q2 + q - 1, nm + one) + detail::mono(f, q2, two * a) + detail::mono(f, q, two * a1 * a),
        policy));
    inst.checks.push_back(check_permutation("h permutes", tabulate(h, policy)));

    // a^{2q^2} h^{2q} - h^2 = (N(a)-1) x ℓ'(x)^{q^2}
    const FieldElem a2sq = a2 * a2;
    const FieldElem nm1 = nm - one;
    const auto lhs = tabulate_map(
        f, [&](const FieldElem& x) { const FieldElem hx = h(x); return a2sq * frob_q(hx * hx, 1) - hx * hx; }, policy);
    const auto rhs = tabulate_map(f, [&](const FieldElem& x) { return nm1 * x * frob_q(ellt(x), 2); }, policy);
    inst.checks.push_back(check_same_map("a^(2q^2) h^(2q) - h^2 = (N(a)-1) x l'(x)^(q^2)", lhs, rhs));

    // 2/(1-N^2) (a^{q^2+q} x^{q^2} + (1-N)/2 x^q - a^{q^2} x)
    const FieldElem c = two * inv(one - nm * nm);
    const LinPoly ell_inv(f, {-(c * a2), c * (one - nm) * inv(two), c * a2 * a1});
    inst.checks.push_back(check_same_linpoly("displayed inverse of l composes to x",
                                             lp_compose(ell, ell_inv), LinPoly::identity(f)));
    inst.checks.push_back(check_same_linpoly("l composed after displayed inverse is x",
                                             lp_compose(ell_inv, ell), LinPoly::identity(f)));
    inst.checks.push_back(check_bool("displayed inverse of l is not a binomial", ell_inv.support().size() == 3));

    // the corollary with s0 = 2, α = a^{2q}/(N-1), β = -1/(N-1)
    const auto rep = check_cor_s3(ell, linpoly_as_exppoly(h), a1 * a1 * inv(nm1), -inv(nm1), 2, policy);
    for (const auto& hc : rep.hypotheses) inst.checks.push_back({"corollary: " + hc.name, hc.pass, hc.witness, hc.note});
    if (rep.conclusion) inst.checks.push_back({"corollary: " + rep.conclusion->name, rep.conclusion->pass,
                                               rep.conclusion->witness, rep.conclusion->note});
    return inst;
}

// ---- q = 4^k example -------------------------------------------------------

/// The two primitive elements of the subfield F_4, in code order.
inline std::array<FieldElem, 2> f4_primitive_elements(const FieldCtx& f) {
    if (f.p() != 2 || f.degree() % 2 != 0) throw PreconditionError("F_4 is not a subfield");
    std::vector<FieldElem> out;
    for (auto x : enumerate_nonzero(f))
        if (!x.is_one() && pow(x, 3).is_one()) out.push_back(x);
    if (out.size() != 2) throw InternalError("expected exactly two primitive elements of F_4");
    return {out[0], out[1]};
}

/// q = 4^k, n = 3; `alpha_choice` in {1, 2} picks the primitive element of F_4.
inline FamilyInstance family_f4k(std::uint32_t k, int alpha_choice, const ScanPolicy& policy = {}) {
    if (k == 0) throw PreconditionError("k must be at least 1");
    if (alpha_choice != 1 && alpha_choice != 2) throw PreconditionError("alpha choice must be 1 or 2");
    if (6ULL * k > 63) throw ScanBoundError("q = 4^k too large");
    require_scannable(std::uint64_t{1} << (6 * k), policy);
    const Field field = make_field(2, 2 * k, 3, policy.bound);
    const auto& f = *field;
    const FieldElem alpha = f4_primitive_elements(f)[alpha_choice - 1];
    const FieldElem one = f.one();
    const BigInt q = f.q();
    const BigInt q2 = q * q;

    const LinPoly l(f, {alpha * alpha, one, one});
    const LinPoly ell(f, {one, one, alpha});

    FamilyInstance inst;
    inst.id = FamilyId::F4K_EXAMPLE;
    inst.field = field;
    inst.params = {{"k", std::int64_t{k}}, {"alpha_choice", std::int64_t{alpha_choice}}, {"alpha", alpha}};
    const std::uint64_t q1 = f.q() + 1;
    inst.forward = {"L(x^(q+1))/l(x)", std::nullopt,
                    tabulate_codes(f, [&](Code x) { return f.mul(l.eval_code(f.pow(x, q1)), f.inv(ell.eval_code(x))); },
                                   policy)};
    const auto ft = *inst.forward.table;
    inst.checks.push_back(check_permutation("L(x^(q+1))/l(x) permutes", ft));
    if (inst.checks.back().pass) inst.inverse = {"table inverse", std::nullopt, map_inverse_table(ft)};

    inst.checks.push_back(check_same_linpoly("L(l(x)) = x^(q^2)", lp_compose(l, ell), LinPoly::monomial(f, 2, one)));
    const std::uint64_t e = reduce_exponent(f, q2 + q);
    const auto lhs = tabulate_codes(f, [&](Code x) { return l.eval_code(f.pow(l.eval_code(x), e)); }, policy);
    const ExpPoly rhs_poly = detail::mono(f, 2, alpha * alpha) + detail::mono(f, q2 + q, alpha);
    inst.checks.push_back(check_same_map("L(L(x)^(q^2+q)) = alpha^2 x^2 + alpha x^(q^2+q)", lhs, tabulate(rhs_poly, policy)));
    inst.checks.push_back(check_permutation("alpha^2 x^2 + alpha x^(q^2+q) permutes", tabulate(rhs_poly, policy)));
    const ExpPoly over_x = detail::mono(f, q2 + q - 1, alpha) + detail::mono(f, 1, alpha * alpha);
    const auto lhs_x = tabulate_codes(f, [&](Code x) { return f.mul(lhs.values[x], f.inv(x)); }, policy);
    inst.checks.push_back(check_same_map("alpha x^(q^2+q-1) + alpha^2 x = L(L(x)^(q^2+q))/x", lhs_x,
                                         tabulate(over_x, policy)));
    const BigInt ord = q2 * q - 1;
    inst.checks.push_back(check_bool("gcd(q+1, q^3-1) = 1", big_gcd(q + 1, ord) == 1));
    inst.checks.push_back(check_bool("(q/2)(q^2+q-1)(q+1) = 1 mod q^3-1", ((q / 2) * (q2 + q - 1) * (q + 1)) % ord == 1));
    return inst;
}

// ---- conclusion presets ----------------------------------------------------

namespace detail {

inline FamilyInstance relabel(FamilyInstance inst, FamilyId id) {
    inst.id = id;
    return inst;
}

}  // namespace detail

/// L(x^{q+1})/x, L = (x^q + ax)^{-1}.
inline FamilyInstance family_conclusion1(const Field& field, const FieldElem& a, const ScanPolicy& policy = {}) {
    return detail::relabel(family_reciprocal_b1(field, a, policy), FamilyId::CONCLUSION_1);
}

/// L(x)/x^{q+1}, L = (x^{q^{n-1}} + ax)^{-1}; closed-form inverse for odd n.
inline FamilyInstance family_conclusion2(const Field& field, const FieldElem& a, const ScanPolicy& policy = {}) {
    if (field->n() % 2 == 1) return detail::relabel(family_thm_rs(field, a, policy), FamilyId::CONCLUSION_2);
    return detail::relabel(family_prop(field, a, 2, policy), FamilyId::CONCLUSION_2);
}

/// form 1: b x^{q^{n-1}} + b^{q^k} x^{q^k+q^{k-1}-1}; form 2: b^{q^k} x^{q^{k+1}+q^k-1} + b x^q.
inline FamilyInstance family_conclusion3(const Field& field, const FieldElem& b, int form,
                                         const ScanPolicy& policy = {}) {
    const auto& f = *field;
    detail::require_ctx(field, b);
    if (form != 1 && form != 2) throw PreconditionError("conclusion 3 form must be 1 or 2");
    if (f.n() % 2 != 0) throw PreconditionError("conclusion 3 requires even n");
    const std::uint32_t n = f.n(), k = n / 2;
    const int which = k % 2 == 1 ? 1 : 2;
    // Form 1 is the corollary's L(x^{q+1})/x for the parameter b^q; form 2
    // is the companion ℓ(x^{q+1})/x for the parameter b.
    const FieldElem param = form == 1 ? frob_q(b, 1) : b;
    detail::gate_cor_n2k(f, which, param, std::nullopt);
    FamilyInstance cor = family_cor_n2k(field, which, param, std::nullopt, policy);

    const BigInt qk = q_pow(f, k), qk1 = q_pow(f, k - 1), q = f.q();
    const FieldElem bk = frob_q(b, k);
    ExpPoly display = form == 1
                          ? detail::mono(f, q_pow(f, n - 1), b) + detail::mono(f, qk + qk1 - 1, bk)
                          : detail::mono(f, qk * q + qk - 1, bk) + detail::mono(f, q, b);
    FamilyInstance inst;
    inst.id = FamilyId::CONCLUSION_3;
    inst.field = field;
    inst.params = {{"b", b}, {"form", std::int64_t{form}}};
    inst.checks = cor.checks;
    inst.notes = cor.notes;
    if (!cor.companion) {
        inst.forward = {"display", display, std::nullopt};
        return inst;
    }
    const MapForm& derived = form == 1 ? cor.forward : cor.companion->first;
    inst.checks.push_back(check_same_poly("display equals the derived form", display, *derived.poly, policy));
    inst.forward = {form == 1 ? "b x^(q^(n-1)) + b^(q^k) x^(q^k+q^(k-1)-1)" : "b^(q^k) x^(q^(k+1)+q^k-1) + b x^q",
                    display, std::nullopt};
    inst.inverse = form == 1 ? cor.inverse : cor.companion->second;
    inst.checks.push_back(check_inverse("display inverse composes both ways", tabulate(display, policy),
                                        inst.inverse.values(policy)));
    return inst;
}

/// a^{q^2} x^{q^3} + b^{q^2} x^{q^3+q^2-1} + a x^{q^2+q-1} + b x^q.
inline FamilyInstance family_conclusion4(const Field& field, const FieldElem& a, const FieldElem& b,
                                         const ScanPolicy& policy = {}) {
    const auto& f = *field;
    FamilyInstance inst = detail::relabel(family_cor_n2k(field, 3, b, a, policy), FamilyId::CONCLUSION_4);
    const BigInt q = f.q();
    const BigInt q2 = q * q, q3 = q2 * q;
    const ExpPoly display = detail::mono(f, q3, frob_q(a, 2)) + detail::mono(f, q3 + q2 - 1, frob_q(b, 2)) +
                            detail::mono(f, q2 + q - 1, a) + detail::mono(f, q, b);
    inst.checks.push_back(check_same_poly("display equals L(x^(q+1))/x", display,
                                          detail::lin_q1_over_x(cor_case3_linpoly(f, a, b)), policy));
    inst.forward.formula = "a^(q^2) x^(q^3) + b^(q^2) x^(q^3+q^2-1) + a x^(q^2+q-1) + b x^q";
    return inst;
}

// ---- generic dispatch --------------------------------------------------------

/// Named arguments for build_family; which ones are needed depends on the family.
struct FamilyArgs {
    std::optional<FieldElem> a;
    std::optional<FieldElem> b;
    std::optional<FieldElem> beta;
    std::optional<LinPoly> L;
    std::optional<std::int64_t> k;
    std::optional<std::int64_t> alpha;  ///< f4k: which primitive element of F_4 (1 or 2)
    std::optional<std::int64_t> form;   ///< conclusion 3
    std::optional<std::string> variant; ///< e0
};

namespace detail {

template <class T>
const T& need(const std::optional<T>& v, const char* name) {
    if (!v) throw PreconditionError(std::string("missing parameter '") + name + "'");
    return *v;
}

}  // namespace detail

inline FamilyInstance build_family(FamilyId id, const Field& field, const FamilyArgs& args,
                                   const ScanPolicy& policy = {}) {
    using detail::need;
    if (id != FamilyId::F4K_EXAMPLE && !field) throw PreconditionError("a field is required");
    switch (id) {
    case FamilyId::E0_TRINOMIAL: {
        const auto v = parse_e0_variant(args.variant.value_or("base"));
        if (!v) throw PreconditionError("unknown e0 variant '" + *args.variant + "'");
        return family_e0(field, need(args.a, "a"), *v, policy);
    }
    case FamilyId::PROP_FIRST: return family_prop(field, need(args.a, "a"), 1, policy);
    case FamilyId::PROP_SECOND: return family_prop(field, need(args.a, "a"), 2, policy);
    case FamilyId::THM_RS_INVERSE: return family_thm_rs(field, need(args.a, "a"), policy);
    case FamilyId::THM_RECIPROCAL_B1: return family_reciprocal_b1(field, need(args.a, "a"), policy);
    case FamilyId::THM_RECIPROCAL_B2: {
        const auto k = need(args.k, "k");
        if (k <= 0) throw PreconditionError("k must be positive");
        return family_reciprocal_b2(field, need(args.L, "L"), need(args.beta, "beta"), static_cast<std::uint32_t>(k),
                                    policy);
    }
    case FamilyId::COR_N2K_CASE1: return family_cor_n2k(field, 1, need(args.b, "b"), std::nullopt, policy);
    case FamilyId::COR_N2K_CASE2: return family_cor_n2k(field, 2, need(args.b, "b"), std::nullopt, policy);
    case FamilyId::COR_N2K_CASE3: return family_cor_n2k(field, 3, need(args.b, "b"), need(args.a, "a"), policy);
    case FamilyId::PROP_N3_SEXTIC: return family_sextic(field, need(args.a, "a"), policy);
    case FamilyId::E1_FAMILY: return family_e1(field, need(args.a, "a"), policy);
    case FamilyId::F4K_EXAMPLE: {
        const auto k = need(args.k, "k");
        if (k <= 0 || k > 4) throw PreconditionError("k must be in [1, 4]");
        return family_f4k(static_cast<std::uint32_t>(k), static_cast<int>(args.alpha.value_or(1)), policy);
    }
    case FamilyId::CONCLUSION_1: return family_conclusion1(field, need(args.a, "a"), policy);
    case FamilyId::CONCLUSION_2: return family_conclusion2(field, need(args.a, "a"), policy);
    case FamilyId::CONCLUSION_3:
        return family_conclusion3(field, need(args.b, "b"), static_cast<int>(args.form.value_or(1)), policy);
    case FamilyId::CONCLUSION_4: return family_conclusion4(field, need(args.a, "a"), need(args.b, "b"), policy);
    }
    throw InternalError("unhandled family id");
}

}  // namespace ppinv
