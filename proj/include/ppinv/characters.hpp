#pragma once

// Additive and quadratic characters of F_{q^n} with values in Z[ζ_p], the
// quadratic Gauss sums, Weil sums Σ_w χ(A w^{q+1} + B w), and the root
// counts N_t / M_t that drive the parity criterion for L(x^{q+1}) / ℓ(x).

#include <cstdint>
#include <mutex>
#include <optional>
#include <vector>

#include "ppinv/bigint.hpp"
#include "ppinv/cyclotomic.hpp"
#include "ppinv/error.hpp"
#include "ppinv/field.hpp"
#include "ppinv/linpoly.hpp"
#include "ppinv/scan.hpp"

namespace ppinv {

inline void require_odd_q(const FieldCtx& ctx, const char* what) {
    if (ctx.p() == 2) throw PreconditionError(std::string(what) + " requires odd q");
}

inline void require_odd_q_n(const FieldCtx& ctx, const char* what) {
    if (ctx.p() == 2 || ctx.n() % 2 == 0) throw PreconditionError(std::string(what) + " requires odd q and odd n");
}

/// χ(a) = ζ_p^{Tr_{F_{q^n}/F_p}(a)}
inline CycInt chi(const FieldElem& a) { return CycInt::zeta_pow(a.ctx().p(), a.ctx().abs_trace(a.code())); }

/// Trace F_q -> F_p of an element of the subfield F_q, as a residue.
inline std::uint32_t base_abs_trace(const FieldElem& a) {
    const auto& c = a.ctx();
    Code acc = 0;
    Code x = a.code();
    for (std::uint32_t j = 0; j < c.e(); ++j) {
        acc = c.add(acc, x);
        x = c.pow(x, c.p());
    }
    return acc;  // lies in F_p, whose codes are 0..p-1
}

/// ψ(a) = ζ_p^{Tr_{F_q/F_p}(a)} for a ∈ F_q; satisfies χ(x) = ψ(Tr(x)).
inline CycInt psi(const FieldElem& a) {
    if (!in_subfield(a, 1)) throw PreconditionError("psi is defined on F_q only");
    return CycInt::zeta_pow(a.ctx().p(), base_abs_trace(a));
}

/// Quadratic character of F_{q^n}, η(0) = 0.
inline int eta(const FieldElem& a) {
    require_odd_q(a.ctx(), "eta");
    if (a.is_zero()) return 0;
    return is_square(a) ? 1 : -1;
}

/// Quadratic character of the subfield F_q.
inline int eta_base(const FieldElem& a) {
    const auto& c = a.ctx();
    require_odd_q(c, "eta_base");
    if (!in_subfield(a, 1)) throw PreconditionError("eta_base is defined on F_q only");
    if (a.is_zero()) return 0;
    return c.pow(a.code(), (c.q() - 1) / 2) == 1 ? 1 : -1;
}

/// G = Σ_{x ≠ 0} η(x) χ(x), by direct summation.
inline CycInt gauss_sum(const FieldCtx& ctx) {
    require_odd_q(ctx, "gauss_sum");
    std::vector<std::int64_t> h(ctx.p(), 0);
    for (auto x : enumerate_nonzero(ctx)) h[ctx.abs_trace(x.code())] += eta(x);
    return CycInt::from_histogram(ctx.p(), h);
}

/// G_1 = Σ_{x ∈ F_q^*} η_1(x) ψ(x).
inline CycInt gauss_sum_base(const FieldCtx& ctx) {
    require_odd_q(ctx, "gauss_sum_base");
    std::vector<std::int64_t> h(ctx.p(), 0);
    for (const auto& x : base_field_elements(ctx)) {
        if (x.is_zero()) continue;
        h[base_abs_trace(x)] += eta_base(x);
    }
    return CycInt::from_histogram(ctx.p(), h);
}

/// Σ_{w ∈ F_{q^n}} χ(A w^{q+1} + B w), any A (including 0) and B.
inline CycInt weil_sum_direct(const FieldElem& a, const FieldElem& b, const ScanPolicy& policy = {}) {
    const auto& ctx = FieldElem::same(a, b);
    require_scannable(ctx.order(), policy);
    const std::uint64_t q1 = ctx.q() + 1;
    std::vector<std::vector<std::int64_t>> partial;
    std::mutex guard;
    parallel_chunks(ctx.order(), policy.threads, [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::int64_t> h(ctx.p(), 0);
        for (std::uint64_t w = lo; w < hi; ++w) {
            const Code wc = static_cast<Code>(w);
            const Code v = ctx.add(ctx.mul(a.code(), ctx.pow(wc, q1)), ctx.mul(b.code(), wc));
            ++h[ctx.abs_trace(v)];
        }
        std::lock_guard lock(guard);
        partial.push_back(std::move(h));
    });
    std::vector<std::int64_t> total(ctx.p(), 0);
    for (const auto& h : partial)
        for (std::size_t t = 0; t < h.size(); ++t) total[t] += h[t];
    return CycInt::from_histogram(ctx.p(), total);
}

/// Inputs for the closed-form Weil sum: A != 0, q and n odd.
struct WeilParams {
    FieldElem a;
    FieldElem b;

    WeilParams(FieldElem a_, FieldElem b_) : a(a_), b(b_) {
        FieldElem::same(a, b);
        if (a.is_zero()) throw PreconditionError("Weil sum closed form needs A != 0");
    }
};

/// s = Σ_{i=1}^{(n-1)/2} q^{2i}
inline BigInt weil_exponent_s(const FieldCtx& ctx) {
    BigInt s = 0;
    for (std::uint32_t i = 1; i <= (ctx.n() - 1) / 2; ++i) s += q_pow(ctx, 2ULL * i);
    return s;
}

/// θ = λ(A^s B^q) / (2 A^{1+s}), the solution of A^q θ^{q^2} + A θ + B^q = 0.
inline FieldElem weil_theta(const WeilParams& wp) {
    const auto& ctx = wp.a.ctx();
    require_odd_q_n(ctx, "weil_theta");
    const BigInt s = weil_exponent_s(ctx);
    const FieldElem arg = pow(wp.a, s) * frob_q(wp.b, 1);
    return lambda_poly(ctx)(arg) * inv(ctx.from_int(2) * pow(wp.a, s + 1));
}

/// η(A) G χ(-λ(A^s B^q)^{q+1} / (4 N(A))) with a precomputed Gauss sum G.
inline CycInt weil_sum_closed(const WeilParams& wp, const CycInt& gauss) {
    const auto& ctx = wp.a.ctx();
    require_odd_q_n(ctx, "weil_sum_closed");
    const BigInt s = weil_exponent_s(ctx);
    const FieldElem lam = lambda_poly(ctx)(pow(wp.a, s) * frob_q(wp.b, 1));
    const FieldElem arg = -(pow(lam, ctx.q() + 1) * inv(ctx.from_int(4) * norm_rel(wp.a)));
    return BigInt(eta(wp.a)) * (gauss * chi(arg));
}

inline CycInt weil_sum_closed(const WeilParams& wp) {
    require_odd_q_n(wp.a.ctx(), "weil_sum_closed");
    return weil_sum_closed(wp, gauss_sum(wp.a.ctx()));
}

/// Number of x with L(x^{q+1}) / ℓ(x) + t = 0, the fraction read with the
/// x^{-1} = x^{q^n-2} convention.
inline std::uint64_t count_roots_Nt(const LinPoly& l, const LinPoly& ell, const FieldElem& t,
                                    const ScanPolicy& policy = {}) {
    require_same(l, ell);
    const auto& ctx = l.ctx();
    if (t.ctx_ptr() != &ctx) throw ContextMismatch();
    require_scannable(ctx.order(), policy);
    const std::uint64_t q1 = ctx.q() + 1;
    std::uint64_t count = 0;
    for (std::uint64_t x = 0; x < ctx.order(); ++x) {
        const Code xc = static_cast<Code>(x);
        const Code v = ctx.mul(l.eval_code(ctx.pow(xc, q1)), ctx.inv(ell.eval_code(xc)));
        if (ctx.add(v, t.code()) == 0) ++count;
    }
    return count;
}

/// Raised when M_t is not a multiple of q - 1; the scaling argument makes
/// that impossible, so this signals a defect rather than bad input.
class DivisibilityError : public InternalError {
public:
    using InternalError::InternalError;
};

/// Number of x ∈ F_{q^n}^* with Tr(λ(L'(x)^s ℓ'(tx)^q)^{q+1}) = 0.
inline std::uint64_t count_roots_Mt(const LinPoly& l, const LinPoly& ell, const FieldElem& t,
                                    const ScanPolicy& policy = {}) {
    require_same(l, ell);
    const auto& ctx = l.ctx();
    require_odd_q_n(ctx, "count_roots_Mt");
    if (t.ctx_ptr() != &ctx) throw ContextMismatch();
    if (t.is_zero()) throw PreconditionError("M_t needs t != 0");
    require_scannable(ctx.order(), policy);
    const LinPoly lt = transpose(l);
    const LinPoly ellt = transpose(ell);
    const LinPoly lam = lambda_poly(ctx);
    const std::uint64_t s = reduce_exponent(ctx, weil_exponent_s(ctx));
    const std::uint64_t q = ctx.q();
    std::uint64_t count = 0;
    for (std::uint64_t x = 1; x < ctx.order(); ++x) {
        const Code xc = static_cast<Code>(x);
        const Code inner = ctx.mul(ctx.pow(lt.eval_code(xc), s),
                                   ctx.pow(ellt.eval_code(ctx.mul(t.code(), xc)), q));
        const Code v = ctx.pow(lam.eval_code(inner), q + 1);
        if (trace_rel(FieldElem(&ctx, v)).is_zero()) ++count;
    }
    if (count % (q - 1) != 0)
        throw DivisibilityError("M_t = " + std::to_string(count) + " is not divisible by q-1");
    return count;
}

struct ParityReport {
    bool criterion = true;                ///< M_t/(q-1) even for every t != 0
    std::optional<FieldElem> odd_witness; ///< first t with M_t/(q-1) odd
    std::vector<std::uint64_t> m_counts;  ///< M_t indexed by code of t (index 0 unused)
};

/// Evaluates the M_t parity criterion over every t ∈ F_{q^n}^*.
inline ParityReport parity_criterion(const LinPoly& l, const LinPoly& ell, const ScanPolicy& policy = {}) {
    const auto& ctx = l.ctx();
    ParityReport rep;
    rep.m_counts.assign(ctx.order(), 0);
    for (auto t : enumerate_nonzero(ctx)) {
        const std::uint64_t m = count_roots_Mt(l, ell, t, policy);
        rep.m_counts[t.code()] = m;
        if ((m / (ctx.q() - 1)) % 2 != 0 && rep.criterion) {
            rep.criterion = false;
            rep.odd_witness = t;
        }
    }
    return rep;
}

}  // namespace ppinv
