#pragma once

// q-linearized polynomials L(x) = Σ_{i<n} a_i x^{q^i} over F_{q^n}, taken
// modulo x^{q^n} - x so that every F_q-linear endomorphism has exactly one
// representation.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "ppinv/bigint.hpp"
#include "ppinv/error.hpp"
#include "ppinv/field.hpp"

namespace ppinv {

class LinPoly {
public:
    explicit LinPoly(const FieldCtx& ctx) : ctx_(&ctx), c_(ctx.n(), ctx.zero()) {}

    /// Coefficient i multiplies x^{q^i}. Indices >= n fold back mod n.
    LinPoly(const FieldCtx& ctx, const std::vector<FieldElem>& coeffs) : LinPoly(ctx) {
        for (std::size_t i = 0; i < coeffs.size(); ++i) add_to(i, coeffs[i]);
    }

    static LinPoly identity(const FieldCtx& ctx) { return monomial(ctx, 0, ctx.one()); }

    /// c x^{q^i}
    static LinPoly monomial(const FieldCtx& ctx, std::uint64_t i, const FieldElem& c) {
        LinPoly l(ctx);
        l.add_to(i, c);
        return l;
    }

    /// x^{q^k} + a x
    static LinPoly binomial(const FieldCtx& ctx, std::uint64_t k, const FieldElem& a) {
        LinPoly l(ctx);
        l.add_to(k, ctx.one());
        l.add_to(0, a);
        return l;
    }

    const FieldCtx& ctx() const noexcept { return *ctx_; }
    std::uint32_t n() const noexcept { return ctx_->n(); }
    const FieldElem& coeff(std::size_t i) const { return c_.at(i); }
    const std::vector<FieldElem>& coeffs() const noexcept { return c_; }

    void set(std::size_t i, const FieldElem& v) {
        check_ctx(v);
        c_.at(i) = v;
    }

    void add_to(std::uint64_t i, const FieldElem& v) {
        check_ctx(v);
        auto& slot = c_[i % ctx_->n()];
        slot = slot + v;
    }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const FieldElem& v) { return v.is_zero(); });
    }

    /// Indices i with a_i != 0.
    std::vector<std::uint32_t> support() const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) out.push_back(i);
        return out;
    }

    Code eval_code(Code x) const noexcept {
        const auto& f = *ctx_;
        Code acc = 0;
        for (std::uint32_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            acc = f.add(acc, f.mul(c_[i].code(), f.frob(x, i)));
        }
        return acc;
    }

    FieldElem operator()(const FieldElem& x) const {
        if (x.ctx_ptr() != ctx_) throw ContextMismatch();
        return {ctx_, eval_code(x.code())};
    }

    friend bool operator==(const LinPoly& a, const LinPoly& b) { return a.ctx_ == b.ctx_ && a.c_ == b.c_; }

private:
    void check_ctx(const FieldElem& v) const {
        if (v.ctx_ptr() != ctx_) throw ContextMismatch();
    }

    const FieldCtx* ctx_;
    std::vector<FieldElem> c_;
};

inline FieldElem lp_eval(const LinPoly& l, const FieldElem& x) { return l(x); }

inline void require_same(const LinPoly& a, const LinPoly& b) {
    if (&a.ctx() != &b.ctx()) throw ContextMismatch();
}

inline LinPoly lp_add(const LinPoly& a, const LinPoly& b) {
    require_same(a, b);
    LinPoly r = a;
    for (std::uint32_t i = 0; i < a.n(); ++i) r.add_to(i, b.coeff(i));
    return r;
}

inline LinPoly lp_scale(const FieldElem& s, const LinPoly& a) {
    LinPoly r(a.ctx());
    for (std::uint32_t i = 0; i < a.n(); ++i) r.set(i, s * a.coeff(i));
    return r;
}

/// (L ∘ M)(x) = L(M(x)); c_k = Σ_{i+j ≡ k} a_i b_j^{q^i}.
inline LinPoly lp_compose(const LinPoly& l, const LinPoly& m) {
    require_same(l, m);
    const std::uint32_t n = l.n();
    LinPoly r(l.ctx());
    for (std::uint32_t i = 0; i < n; ++i) {
        if (l.coeff(i).is_zero()) continue;
        for (std::uint32_t j = 0; j < n; ++j) {
            if (m.coeff(j).is_zero()) continue;
            r.add_to(i + j, l.coeff(i) * frob_q(m.coeff(j), i));
        }
    }
    return r;
}

/// L'(x) = Σ (a_i x)^{q^{n-i}}: the adjoint of L under (x, y) -> Tr(xy).
inline LinPoly transpose(const LinPoly& l) {
    const std::uint32_t n = l.n();
    LinPoly r(l.ctx());
    for (std::uint32_t i = 0; i < n; ++i) r.add_to(n - i, frob_q(l.coeff(i), n - i));
    return r;
}

/// λ(x) = Σ_{i<n} (-1)^{i+1} x^{q^{2i}}
inline LinPoly lambda_poly(const FieldCtx& ctx) {
    LinPoly r(ctx);
    for (std::uint32_t i = 0; i < ctx.n(); ++i) r.add_to(2ULL * i, ctx.from_int(i % 2 == 0 ? -1 : 1));
    return r;
}

// ---- matrices over F_q --------------------------------------------------------

/// Dense matrix whose entries are elements of the subfield F_q.
struct FqMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<FieldElem> a;

    FqMatrix(const FieldCtx& ctx, std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, ctx.zero()) {}
    FieldElem& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const FieldElem& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    FqMatrix transposed() const {
        FqMatrix t(a.front().ctx(), cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend bool operator==(const FqMatrix& x, const FqMatrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

namespace detail {

/// In-place reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(FqMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t piv = row;
        while (piv < m.rows && m(piv, col).is_zero()) ++piv;
        if (piv == m.rows) continue;
        for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(row, j), m(piv, j));
        const FieldElem s = inv(m(row, col));
        for (std::size_t j = 0; j < m.cols; ++j) m(row, j) = m(row, j) * s;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            const FieldElem f = m(i, col);
            for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = m(i, j) - f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace detail

inline std::size_t matrix_rank(FqMatrix m) { return detail::rref(m).size(); }

inline std::optional<FqMatrix> matrix_inverse(const FqMatrix& m) {
    const std::size_t n = m.rows;
    const auto& ctx = m.a.front().ctx();
    FqMatrix aug(ctx, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = ctx.one();
    }
    const auto piv = detail::rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    FqMatrix out(ctx, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
    return out;
}

/// Basis vectors of {v : m v = 0}.
inline std::vector<std::vector<FieldElem>> matrix_nullspace(FqMatrix m) {
    const auto& ctx = m.a.front().ctx();
    const auto piv = detail::rref(m);
    std::vector<bool> is_piv(m.cols, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::vector<FieldElem>> out;
    for (std::size_t free = 0; free < m.cols; ++free) {
        if (is_piv[free]) continue;
        std::vector<FieldElem> v(m.cols, ctx.zero());
        v[free] = ctx.one();
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, free);
        out.push_back(std::move(v));
    }
    return out;
}

// ---- bases --------------------------------------------------------------

/// 1, g, ..., g^{n-1} for the fixed generator g; an F_q-basis because g has
/// degree n over F_q.
inline std::vector<FieldElem> default_basis(const FieldCtx& ctx) {
    std::vector<FieldElem> b;
    FieldElem x = ctx.one();
    for (std::uint32_t i = 0; i < ctx.n(); ++i) {
        b.push_back(x);
        x = x * ctx.generator();
    }
    return b;
}

/// β with Tr(α_i β_j) = δ_ij, from the inverse of the trace Gram matrix.
inline std::vector<FieldElem> dual_basis(const std::vector<FieldElem>& basis) {
    if (basis.empty()) throw PreconditionError("empty basis");
    const auto& ctx = basis.front().ctx();
    const std::size_t n = ctx.n();
    if (basis.size() != n) throw PreconditionError("basis must have n elements");
    FqMatrix gram(ctx, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gram(i, j) = trace_rel(basis[i] * basis[j]);
    const auto ginv = matrix_inverse(gram);
    if (!ginv) throw PreconditionError("basis is not F_q-linearly independent");
    std::vector<FieldElem> dual(n, ctx.zero());
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) dual[j] = dual[j] + (*ginv)(k, j) * basis[k];
    return dual;
}

/// Matrix of L in the given basis: entry (i, j) = Tr(β_i L(α_j)).
inline FqMatrix lp_matrix(const LinPoly& l, const std::vector<FieldElem>& basis) {
    const auto dual = dual_basis(basis);
    const std::size_t n = basis.size();
    FqMatrix m(l.ctx(), n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const FieldElem img = l(basis[j]);
        for (std::size_t i = 0; i < n; ++i) m(i, j) = trace_rel(dual[i] * img);
    }
    return m;
}

inline std::size_t lp_rank(const LinPoly& l) { return matrix_rank(lp_matrix(l, default_basis(l.ctx()))); }

/// Kernel by evaluating L on every element.
inline std::vector<FieldElem> lp_kernel_scan(const LinPoly& l) {
    std::vector<FieldElem> out;
    for (auto x : enumerate(l.ctx()))
        if (l.eval_code(x.code()) == 0) out.push_back(x);
    return out;
}

/// Kernel from the matrix nullspace, expanded to every F_q-combination.
inline std::vector<FieldElem> lp_kernel_nullspace(const LinPoly& l) {
    const auto& ctx = l.ctx();
    const auto basis = default_basis(ctx);
    const auto null = matrix_nullspace(lp_matrix(l, basis));
    std::vector<FieldElem> gens;
    for (const auto& v : null) {
        FieldElem x = ctx.zero();
        for (std::size_t j = 0; j < v.size(); ++j) x = x + v[j] * basis[j];
        gens.push_back(x);
    }
    const auto fq = base_field_elements(ctx);
    std::vector<FieldElem> out{ctx.zero()};
    for (const auto& gvec : gens) {
        std::vector<FieldElem> next;
        next.reserve(out.size() * fq.size());
        for (const auto& base : out)
            for (const auto& c : fq) next.push_back(base + c * gvec);
        out = std::move(next);
    }
    std::sort(out.begin(), out.end(), [](const FieldElem& a, const FieldElem& b) { return a.code() < b.code(); });
    return out;
}

inline constexpr std::uint64_t kKernelScanLimit = std::uint64_t{1} << 12;

/// Sorted by code.
inline std::vector<FieldElem> lp_kernel(const LinPoly& l) {
    return l.ctx().order() <= kKernelScanLimit ? lp_kernel_scan(l) : lp_kernel_nullspace(l);
}

/// Generic inverse through the matrix representation; the result is read
/// back as Σ_k (Σ_j v_j β_j^{q^k}) x^{q^k} where v_j = L^{-1}(α_j).
inline LinPoly lp_invert(const LinPoly& l) {
    const auto& ctx = l.ctx();
    const auto basis = default_basis(ctx);
    const auto dual = dual_basis(basis);
    const std::size_t n = basis.size();
    const auto m = lp_matrix(l, basis);
    const auto minv = matrix_inverse(m);
    if (!minv) throw PreconditionError("linearized polynomial is singular");
    std::vector<FieldElem> vals(n, ctx.zero());
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) vals[j] = vals[j] + (*minv)(i, j) * basis[i];
    LinPoly r(ctx);
    for (std::size_t k = 0; k < n; ++k) {
        FieldElem c = ctx.zero();
        for (std::size_t j = 0; j < n; ++j) c = c + vals[j] * frob_q(dual[j], k);
        r.set(k, c);
    }
    return r;
}

/// Closed-form inverse of x^{q^k} + a x for gcd(k, n) = 1 and N(-a) != 1:
///   N(a)/(N(a) + (-1)^{n-1}) · Σ_{i<n} (-1)^i a^{-(q^{k(i+1)}-1)/(q^k-1)} x^{q^{ki}}
inline LinPoly lp_invert_binomial(const FieldCtx& ctx, std::uint64_t k, const FieldElem& a) {
    const std::uint32_t n = ctx.n();
    if (k == 0 || std::gcd<std::uint64_t, std::uint64_t>(k, n) != 1)
        throw PreconditionError("binomial inverse needs gcd(k, n) = 1 with k >= 1");
    if (a.ctx_ptr() != &ctx) throw ContextMismatch();
    if (a.is_zero()) throw PreconditionError("binomial inverse needs a != 0");
    if (norm_rel(-a).is_one()) throw PreconditionError("N(-a) = 1: x^{q^k} + a x is not invertible");
    const FieldElem na = norm_rel(a);
    const FieldElem sign = ctx.from_int(n % 2 == 1 ? 1 : -1);  // (-1)^{n-1}
    const FieldElem scale = na * inv(na + sign);
    const FieldElem a_inv = inv(a);
    const BigInt qk = big_pow(ctx.q(), k);
    LinPoly r(ctx);
    BigInt e = 1;  // (q^{k(i+1)} - 1)/(q^k - 1) = 1 + q^k + ... + q^{ki}
    BigInt qki = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        FieldElem term = scale * pow(a_inv, e);
        if (i % 2 == 1) term = -term;
        r.add_to(k * i, term);
        qki *= qk;
        e += qki;
    }
    return r;
}

}  // namespace ppinv
