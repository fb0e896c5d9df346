#pragma once

// Checkers for the two transpose theorems and the M_t parity criterion,
// plus the seeded random-L generator the suites use.
//
//   Theorem 1: perm(L(x)/x^{q+1})  =>  perm(L'(x^{q+1})/x), <=> for odd n.
//   Theorem 2: perm(L(x)/x^{q+1})  =>  perm(L) and perm(L^{-1}(x^{q+1})/x),
//              <=> for odd n.
// For even n the converse is measured and reported, never asserted.

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "ppinv/characters.hpp"
#include "ppinv/exppoly.hpp"
#include "ppinv/field.hpp"
#include "ppinv/linpoly.hpp"
#include "ppinv/scan.hpp"

namespace ppinv {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

using Collision = std::optional<std::pair<FieldElem, FieldElem>>;

struct TheoremReport {
    int theorem = 1;
    bool p1 = false;         ///< L(x)/x^{q+1} permutes
    bool rhs = false;        ///< the other side of the implication
    bool perm_l = false;     ///< theorem 2 only: L permutes
    bool perm_image = false; ///< theorem 1: L'(x^{q+1})/x; theorem 2: L^{-1}(x^{q+1})/x (false if L singular)
    bool converse_asserted = false;
    Collision p1_collision;
    Collision rhs_collision;

    bool forward_holds() const noexcept { return !p1 || rhs; }
    bool converse_holds() const noexcept { return !rhs || p1; }
    bool violation() const noexcept { return !forward_holds() || (converse_asserted && !converse_holds()); }
};

namespace detail {

inline ExpPoly over_xq1(const LinPoly& l) {
    return linpoly_as_exppoly(l).times_monomial(-(BigInt(l.ctx().q()) + 1));
}

inline ExpPoly q1_over_x(const LinPoly& l) {
    return linpoly_at_power(l, BigInt(l.ctx().q()) + 1).times_monomial(-1);
}

}  // namespace detail

inline TheoremReport check_theorem1(const LinPoly& l, const ScanPolicy& policy = {}) {
    TheoremReport r;
    r.theorem = 1;
    r.converse_asserted = l.n() % 2 == 1;
    const auto a = is_permutation(detail::over_xq1(l), policy);
    const auto b = is_permutation(detail::q1_over_x(transpose(l)), policy);
    r.p1 = a.ok;
    r.p1_collision = a.collision;
    r.perm_image = b.ok;
    r.rhs_collision = b.collision;
    r.rhs = b.ok;
    return r;
}

inline TheoremReport check_theorem2(const LinPoly& l, const ScanPolicy& policy = {}) {
    TheoremReport r;
    r.theorem = 2;
    r.converse_asserted = l.n() % 2 == 1;
    const auto a = is_permutation(detail::over_xq1(l), policy);
    r.p1 = a.ok;
    r.p1_collision = a.collision;
    r.perm_l = lp_rank(l) == l.n();
    if (r.perm_l) {
        const auto b = is_permutation(detail::q1_over_x(lp_invert(l)), policy);
        r.perm_image = b.ok;
        r.rhs_collision = b.collision;
    }
    r.rhs = r.perm_l && r.perm_image;
    return r;
}

/// Seeded draw: dense, binomial a x^{q^i} + b x^{q^j}, or trinomial, in equal proportion.
inline LinPoly random_linpoly(const FieldCtx& f, std::mt19937_64& rng) {
    std::uniform_int_distribution<Code> any(0, static_cast<Code>(f.order() - 1));
    std::uniform_int_distribution<Code> nonzero(1, static_cast<Code>(f.order() - 1));
    std::uniform_int_distribution<std::uint32_t> index(0, f.n() - 1);
    std::uniform_int_distribution<int> shape(0, 2);
    LinPoly l(f);
    const int s = shape(rng);
    if (s == 0 || f.n() == 1) {
        for (std::uint32_t i = 0; i < f.n(); ++i) l.set(i, f.elem(any(rng)));
        return l;
    }
    const int terms = s == 1 ? 2 : 3;
    for (int t = 0; t < terms; ++t) l.set(index(rng), f.elem(nonzero(rng)));
    return l;
}

struct TheoremSuite {
    std::uint64_t trials = 0;
    std::uint64_t seed = kDefaultSeed;
    FieldSpec field;
    bool converse_asserted = false;
    std::uint64_t thm1_violations = 0;
    std::uint64_t thm2_violations = 0;
    std::uint64_t p1_true = 0;             ///< trials with L(x)/x^{q+1} a permutation
    std::uint64_t converse_failures = 0;   ///< measured converse failures (data for even n)
    std::optional<LinPoly> first_violation;
    std::vector<std::pair<TheoremReport, TheoremReport>> reports;

    bool ok() const noexcept { return thm1_violations == 0 && thm2_violations == 0; }
};

inline TheoremSuite run_theorem_suite(const FieldCtx& f, std::uint64_t trials, std::uint64_t seed,
                                      const ScanPolicy& policy = {}, bool keep_reports = false) {
    TheoremSuite s;
    s.trials = trials;
    s.seed = seed;
    s.field = f.spec();
    s.converse_asserted = f.n() % 2 == 1;
    std::mt19937_64 rng(seed);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const LinPoly l = random_linpoly(f, rng);
        const auto r1 = check_theorem1(l, policy);
        const auto r2 = check_theorem2(l, policy);
        s.thm1_violations += r1.violation();
        s.thm2_violations += r2.violation();
        s.p1_true += r1.p1;
        s.converse_failures += !r1.converse_holds() + !r2.converse_holds();
        if ((r1.violation() || r2.violation()) && !s.first_violation) s.first_violation = l;
        if (keep_reports) s.reports.emplace_back(r1, r2);
    }
    return s;
}

// ---- parity criterion against exhaustive bijectivity ------------------------

struct CriterionComparison {
    bool criterion = false;  ///< every M_t/(q-1) even
    bool bijective = false;  ///< L(x^{q+1})/ℓ(x) permutes
    std::optional<FieldElem> odd_witness;
    Collision collision;
    bool agree() const noexcept { return criterion == bijective; }
};

inline ValueTable ratio_table(const LinPoly& l, const LinPoly& ell, const ScanPolicy& policy = {}) {
    require_same(l, ell);
    const auto& f = l.ctx();
    const std::uint64_t q1 = f.q() + 1;
    return tabulate_codes(
        f, [&](Code x) { return f.mul(l.eval_code(f.pow(x, q1)), f.inv(ell.eval_code(x))); }, policy);
}

inline CriterionComparison compare_criterion(const LinPoly& l, const LinPoly& ell, const ScanPolicy& policy = {}) {
    CriterionComparison c;
    const auto rep = parity_criterion(l, ell, policy);
    c.criterion = rep.criterion;
    c.odd_witness = rep.odd_witness;
    const auto pr = is_permutation(ratio_table(l, ell, policy));
    c.bijective = pr.ok;
    c.collision = pr.collision;
    return c;
}

}  // namespace ppinv
