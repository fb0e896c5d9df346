#pragma once

// Sparse polynomials treated as maps F_{q^n} -> F_{q^n}, plus the
// exhaustive machinery (value tables, bijectivity, inverse tables).
//
// x^{-1} means x^{q^n-2}, so every "fraction" with a monomial denominator is
// an honest polynomial map with 0 -> 0. Exponents are canonicalized: 0 stays
// 0 (the constant map), e > 0 becomes the representative of e mod q^n - 1 in
// [1, q^n - 1]. Two different canonical exponents give different maps.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ppinv/bigint.hpp"
#include "ppinv/error.hpp"
#include "ppinv/field.hpp"
#include "ppinv/linpoly.hpp"
#include "ppinv/scan.hpp"

namespace ppinv {

struct Term {
    std::uint64_t exp;
    FieldElem coeff;

    friend bool operator==(const Term&, const Term&) = default;
};

class ExpPoly {
public:
    explicit ExpPoly(const FieldCtx& ctx) : ctx_(&ctx) {}

    /// c x^e; e may be negative, meaning (x^{-1})^{|e|}.
    static ExpPoly monomial(const FieldCtx& ctx, const BigInt& e, const FieldElem& c) {
        ExpPoly f(ctx);
        f.add_term(e, c);
        return f;
    }
    static ExpPoly monomial(const FieldCtx& ctx, const BigInt& e) { return monomial(ctx, e, ctx.one()); }
    static ExpPoly x(const FieldCtx& ctx) { return monomial(ctx, 1); }

    /// Canonical representative of x^e as a map.
    static std::uint64_t canonical_exponent(const FieldCtx& ctx, const BigInt& e) {
        if (e == 0) return 0;
        const std::uint64_t m = ctx.mult_order();
        const std::uint64_t r = mod_u64(e, m);
        return r == 0 ? m : r;
    }

    ExpPoly& add_term(const BigInt& e, const FieldElem& c) {
        if (c.ctx_ptr() != ctx_) throw ContextMismatch();
        const std::uint64_t ce = canonical_exponent(*ctx_, e);
        auto it = std::lower_bound(terms_.begin(), terms_.end(), ce,
                                   [](const Term& t, std::uint64_t v) { return t.exp < v; });
        if (it != terms_.end() && it->exp == ce) {
            it->coeff = it->coeff + c;
            if (it->coeff.is_zero()) terms_.erase(it);
        } else if (!c.is_zero()) {
            terms_.insert(it, Term{ce, c});
        }
        return *this;
    }

    const FieldCtx& ctx() const noexcept { return *ctx_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool is_monomial() const noexcept { return terms_.size() == 1; }

    Code eval_code(Code x) const noexcept {
        const auto& f = *ctx_;
        Code acc = 0;
        for (const auto& t : terms_) acc = f.add(acc, f.mul(t.coeff.code(), f.pow(x, t.exp)));
        return acc;
    }

    FieldElem operator()(const FieldElem& x) const {
        if (x.ctx_ptr() != ctx_) throw ContextMismatch();
        return {ctx_, eval_code(x.code())};
    }

    friend ExpPoly operator+(const ExpPoly& a, const ExpPoly& b) {
        if (a.ctx_ != b.ctx_) throw ContextMismatch();
        ExpPoly r = a;
        for (const auto& t : b.terms_) r.add_term(t.exp, t.coeff);
        return r;
    }
    friend ExpPoly operator-(const ExpPoly& a) {
        ExpPoly r(*a.ctx_);
        for (const auto& t : a.terms_) r.add_term(t.exp, -t.coeff);
        return r;
    }
    friend ExpPoly operator-(const ExpPoly& a, const ExpPoly& b) { return a + (-b); }
    friend ExpPoly operator*(const FieldElem& s, const ExpPoly& a) {
        ExpPoly r(*a.ctx_);
        for (const auto& t : a.terms_) r.add_term(t.exp, s * t.coeff);
        return r;
    }

    /// Product of two sparse maps (exact: x^a x^b = x^{a+b} as maps for a, b canonical).
    friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
        if (a.ctx_ != b.ctx_) throw ContextMismatch();
        ExpPoly r(*a.ctx_);
        for (const auto& s : a.terms_)
            for (const auto& t : b.terms_) r.add_term(BigInt(s.exp) + t.exp, s.coeff * t.coeff);
        return r;
    }

    /// f(x) · x^d, d possibly negative.
    ExpPoly times_monomial(const BigInt& d) const {
        if (d >= 0) return *this * monomial(*ctx_, d);
        // x^{-|d|} = x^{|d|(q^n-2)}, keeps 0 -> 0 even for constant terms.
        return *this * monomial(*ctx_, BigInt(-d) * (ctx_->order() - 2));
    }

    /// f(x^k).
    ExpPoly substitute_power(const BigInt& k) const {
        ExpPoly r(*ctx_);
        const BigInt kk = k >= 0 ? k : BigInt(-k) * (ctx_->order() - 2);
        for (const auto& t : terms_) r.add_term(BigInt(t.exp) * kk, t.coeff);
        return r;
    }

    /// f(x)^{q^i}, using additivity of Frobenius.
    ExpPoly frobenius(std::uint64_t i) const {
        ExpPoly r(*ctx_);
        const BigInt qi = q_pow(*ctx_, i);
        for (const auto& t : terms_) r.add_term(BigInt(t.exp) * qi, frob_q(t.coeff, i));
        return r;
    }

    friend bool operator==(const ExpPoly& a, const ExpPoly& b) { return a.ctx_ == b.ctx_ && a.terms_ == b.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& t : terms_) {
            if (!s.empty()) s += " + ";
            s += to_string(t.coeff) + "*x^" + std::to_string(t.exp);
        }
        return s;
    }

private:
    const FieldCtx* ctx_;
    std::vector<Term> terms_;
};

inline FieldElem ep_eval(const ExpPoly& f, const FieldElem& x) { return f(x); }

/// Σ a_i x^{k q^i}, i.e. L(x^k) as a sparse map.
inline ExpPoly linpoly_at_power(const LinPoly& l, const BigInt& k) {
    const auto& ctx = l.ctx();
    ExpPoly r(ctx);
    const BigInt kk = k >= 0 ? k : BigInt(-k) * (ctx.order() - 2);
    for (std::uint32_t i = 0; i < l.n(); ++i)
        if (!l.coeff(i).is_zero()) r.add_term(kk * q_pow(ctx, i), l.coeff(i));
    return r;
}

inline ExpPoly linpoly_as_exppoly(const LinPoly& l) { return linpoly_at_power(l, 1); }

/// numer / (c x^d) compiled to a single sparse map.
inline ExpPoly ep_from_fraction(const ExpPoly& numer, const ExpPoly& denom) {
    if (&numer.ctx() != &denom.ctx()) throw ContextMismatch();
    if (!denom.is_monomial()) throw PreconditionError("fraction denominator must be a single monomial");
    const auto& t = denom.terms().front();
    return inv(t.coeff) * numer.times_monomial(-BigInt(t.exp));
}

inline ExpPoly ep_from_fraction(const LinPoly& numer, const ExpPoly& denom) {
    return ep_from_fraction(linpoly_as_exppoly(numer), denom);
}

// ---- value tables -----------------------------------------------------------

/// A map given by its values, indexed by element code.
struct ValueTable {
    const FieldCtx* ctx = nullptr;
    std::vector<Code> values;

    FieldElem operator()(const FieldElem& x) const {
        if (x.ctx_ptr() != ctx) throw ContextMismatch();
        return {ctx, values[x.code()]};
    }
    Code eval_code(Code x) const noexcept { return values[x]; }

    friend bool operator==(const ValueTable& a, const ValueTable& b) {
        return a.ctx == b.ctx && a.values == b.values;
    }
};

/// Tabulates fn(Code) -> Code over the whole field.
template <class Fn>
ValueTable tabulate_codes(const FieldCtx& ctx, Fn&& fn, const ScanPolicy& policy = {}) {
    require_scannable(ctx.order(), policy);
    ValueTable t{&ctx, std::vector<Code>(ctx.order())};
    parallel_chunks(ctx.order(), policy.threads, [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t x = lo; x < hi; ++x) t.values[x] = fn(static_cast<Code>(x));
    });
    return t;
}

/// Tabulates any map with `Code eval_code(Code) const`.
template <class Map>
ValueTable tabulate(const Map& f, const ScanPolicy& policy = {}) {
    return tabulate_codes(f.ctx(), [&f](Code x) { return f.eval_code(x); }, policy);
}

inline ValueTable tabulate(const ValueTable& t, const ScanPolicy& = {}) { return t; }

/// Tabulates fn(FieldElem) -> FieldElem.
template <class Fn>
ValueTable tabulate_map(const FieldCtx& ctx, Fn&& fn, const ScanPolicy& policy = {}) {
    return tabulate_codes(ctx, [&](Code x) { return fn(FieldElem(&ctx, x)).code(); }, policy);
}

inline ValueTable identity_table(const FieldCtx& ctx) {
    ValueTable t{&ctx, std::vector<Code>(ctx.order())};
    for (std::uint64_t x = 0; x < ctx.order(); ++x) t.values[x] = static_cast<Code>(x);
    return t;
}

/// (f ∘ g)(x) = f(g(x)).
inline ValueTable compose_tables(const ValueTable& f, const ValueTable& g) {
    if (f.ctx != g.ctx) throw ContextMismatch();
    ValueTable r{f.ctx, std::vector<Code>(g.values.size())};
    for (std::size_t x = 0; x < g.values.size(); ++x) r.values[x] = f.values[g.values[x]];
    return r;
}

struct PermResult {
    bool ok = false;
    /// Smallest-code pair x1 < x2 with f(x1) = f(x2), when not a permutation.
    std::optional<std::pair<FieldElem, FieldElem>> collision;
    explicit operator bool() const noexcept { return ok; }
};

inline PermResult is_permutation(const ValueTable& t) {
    const auto& ctx = *t.ctx;
    std::vector<Code> first_preimage(ctx.order(), FieldCtx::kNoLog);
    for (std::uint64_t x = 0; x < ctx.order(); ++x) {
        auto& slot = first_preimage[t.values[x]];
        if (slot != FieldCtx::kNoLog)
            return {false, std::make_pair(ctx.elem(slot), ctx.elem(static_cast<Code>(x)))};
        slot = static_cast<Code>(x);
    }
    return {true, std::nullopt};
}

inline PermResult is_permutation(const ExpPoly& f, const ScanPolicy& policy = {}) {
    return is_permutation(tabulate(f, policy));
}

inline PermResult is_permutation(const LinPoly& f, const ScanPolicy& policy = {}) {
    return is_permutation(tabulate(f, policy));
}

inline ValueTable map_inverse_table(const ValueTable& t) {
    if (!is_permutation(t)) throw PreconditionError("map is not a permutation; no inverse table");
    ValueTable r{t.ctx, std::vector<Code>(t.values.size())};
    for (std::size_t x = 0; x < t.values.size(); ++x) r.values[t.values[x]] = static_cast<Code>(x);
    return r;
}

inline ValueTable map_inverse_table(const ExpPoly& f, const ScanPolicy& policy = {}) {
    return map_inverse_table(tabulate(f, policy));
}

struct InverseResult {
    bool ok = false;
    std::optional<FieldElem> witness;
    /// "g(f(x))" or "f(g(x))": which composition failed at the witness.
    std::string direction;
    explicit operator bool() const noexcept { return ok; }
};

/// g(f(x)) = x and f(g(x)) = x for every x.
inline InverseResult verify_inverse(const ValueTable& f, const ValueTable& g) {
    if (f.ctx != g.ctx) throw ContextMismatch();
    const auto& ctx = *f.ctx;
    for (std::uint64_t x = 0; x < ctx.order(); ++x)
        if (g.values[f.values[x]] != x) return {false, ctx.elem(static_cast<Code>(x)), "g(f(x))"};
    for (std::uint64_t x = 0; x < ctx.order(); ++x)
        if (f.values[g.values[x]] != x) return {false, ctx.elem(static_cast<Code>(x)), "f(g(x))"};
    return {true, std::nullopt, {}};
}

template <class F, class G>
InverseResult verify_inverse(const F& f, const G& g, const ScanPolicy& policy = {}) {
    return verify_inverse(tabulate(f, policy), tabulate(g, policy));
}

/// First x with a(x) != b(x), if any.
inline std::optional<FieldElem> first_difference(const ValueTable& a, const ValueTable& b) {
    if (a.ctx != b.ctx) throw ContextMismatch();
    for (std::size_t x = 0; x < a.values.size(); ++x)
        if (a.values[x] != b.values[x]) return a.ctx->elem(static_cast<Code>(x));
    return std::nullopt;
}

}  // namespace ppinv
