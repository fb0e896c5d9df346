#pragma once

// Finite-field tower F_p ⊂ F_q ⊂ F_{q^n}, q = p^e.
//
// The big field is realized as F_p[y]/(m(y)) with m the lexicographically
// smallest monic irreducible of degree e*n (coefficient tuple compared
// constant term first). Elements are stored as a packed base-p integer
// ("code"): code = sum c_i p^i where c_i is the coefficient of y^i. Codes
// double as the enumeration order of the field.
//
// Fields with q^n <= 2^16 additionally carry log/antilog/Zech tables. Both
// arithmetic paths stay callable so they can be cross-checked.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "ppinv/bigint.hpp"
#include "ppinv/error.hpp"

namespace ppinv {

using Code = std::uint32_t;

inline bool is_prime(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            out.push_back(d);
            while (v % d == 0) v /= d;
        }
    }
    if (v > 1) out.push_back(v);
    return out;
}

/// "p=<p>,e=<e>,n=<n>"
struct FieldSpec {
    std::uint32_t p = 2;
    std::uint32_t e = 1;
    std::uint32_t n = 1;

    std::string str() const {
        return "p=" + std::to_string(p) + ",e=" + std::to_string(e) + ",n=" + std::to_string(n);
    }

    static FieldSpec parse(const std::string& text) {
        FieldSpec spec;
        bool seen[3] = {false, false, false};
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw PreconditionError("malformed field spec '" + text + "'");
            const std::string key = item.substr(0, eq);
            const std::string val = item.substr(eq + 1);
            if (val.empty() || val.find_first_not_of("0123456789") != std::string::npos || val.size() > 9)
                throw PreconditionError("malformed field spec '" + text + "'");
            const auto v = static_cast<std::uint32_t>(std::stoul(val));
            int slot = key == "p" ? 0 : key == "e" ? 1 : key == "n" ? 2 : -1;
            if (slot < 0 || seen[slot]) throw PreconditionError("malformed field spec '" + text + "'");
            seen[slot] = true;
            (slot == 0 ? spec.p : slot == 1 ? spec.e : spec.n) = v;
        }
        if (!seen[0] || !seen[1] || !seen[2]) throw PreconditionError("field spec needs p, e and n: '" + text + "'");
        return spec;
    }

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

namespace detail {

// Dense polynomials over F_p, constant term first, no trailing zeros.
using PolyP = std::vector<std::uint64_t>;

inline void trim(PolyP& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    std::uint64_t r = 1, b = a % p, k = p - 2;
    while (k) {
        if (k & 1U) r = r * b % p;
        b = b * b % p;
        k >>= 1U;
    }
    return r;
}

inline PolyP poly_rem(PolyP a, const PolyP& m, std::uint64_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint64_t lead_inv = inv_mod(m.back(), p);
    while (a.size() >= m.size()) {
        const std::uint64_t c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + (p - c) * m[i]) % p;
        trim(a);
    }
    return a;
}

inline PolyP poly_mulmod(const PolyP& a, const PolyP& b, const PolyP& m, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PolyP r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return poly_rem(std::move(r), m, p);
}

inline PolyP poly_powmod(PolyP base, std::uint64_t k, const PolyP& m, std::uint64_t p) {
    PolyP r{1};
    base = poly_rem(std::move(base), m, p);
    while (k) {
        if (k & 1U) r = poly_mulmod(r, base, m, p);
        base = poly_mulmod(base, base, m, p);
        k >>= 1U;
    }
    return r;
}

inline PolyP poly_gcd(PolyP a, PolyP b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        PolyP r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Rabin's test: f monic of degree d is irreducible over F_p iff
/// x^{p^d} = x mod f and gcd(f, x^{p^{d/r}} - x) = 1 for each prime r | d.
inline bool is_irreducible(const PolyP& f, std::uint64_t p) {
    const std::size_t d = f.size() - 1;
    if (d == 0) return false;
    if (d == 1) return true;
    std::vector<PolyP> frob_powers(d + 1);  // x^{p^k} mod f
    frob_powers[0] = poly_rem(PolyP{0, 1}, f, p);
    for (std::size_t k = 1; k <= d; ++k) frob_powers[k] = poly_powmod(frob_powers[k - 1], p, f, p);
    auto minus_x = [&](PolyP g) {
        g.resize(std::max<std::size_t>(g.size(), 2), 0);
        g[1] = (g[1] + p - 1) % p;
        trim(g);
        return g;
    };
    if (!minus_x(frob_powers[d]).empty()) return false;
    for (std::uint64_t r : prime_factors(d)) {
        PolyP g = poly_gcd(f, minus_x(frob_powers[d / r]), p);
        if (g.size() != 1) return false;
    }
    return true;
}

/// Smallest monic irreducible of degree d, tuples (c_0, ..., c_{d-1}) in
/// lexicographic order with c_0 most significant.
inline PolyP smallest_irreducible(std::uint64_t p, std::size_t d) {
    if (d == 1) return PolyP{0, 1};
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= p;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        PolyP f(d + 1, 0);
        std::uint64_t t = idx;
        for (std::size_t i = d; i-- > 0;) {
            f[i] = t % p;
            t /= p;
        }
        f[d] = 1;
        if (f[0] == 0) continue;  // divisible by y
        if (is_irreducible(f, p)) return f;
    }
    throw InternalError("no irreducible polynomial found");
}

}  // namespace detail

class FieldElem;
class FieldCtx;

/// Field contexts are shared and immutable; elements keep a raw pointer, so a
/// context must outlive every element built from it.
using Field = std::shared_ptr<const FieldCtx>;

class FieldCtx {
public:
    static constexpr std::uint64_t kTableThreshold = std::uint64_t{1} << 16;
    static constexpr std::uint64_t kDefaultSizeBound = std::uint64_t{1} << 24;
    static constexpr std::size_t kMaxDegree = 24;
    static constexpr Code kNoLog = 0xffffffffU;

    FieldCtx(std::uint32_t p, std::uint32_t e, std::uint32_t n, std::uint64_t size_bound, bool build_tables)
        : p_(p), e_(e), n_(n), d_(std::size_t{e} * n) {
        if (!is_prime(p)) throw PreconditionError("characteristic " + std::to_string(p) + " is not prime");
        if (e == 0 || n == 0) throw PreconditionError("e and n must be positive");
        if (size_bound > kDefaultSizeBound) size_bound = kDefaultSizeBound;
        // q^n = p^{e n}; checked incrementally to avoid overflow.
        std::uint64_t order = 1;
        for (std::size_t i = 0; i < d_; ++i) {
            order *= p;
            if (order > size_bound)
                throw ScanBoundError("field of order " + std::to_string(p) + "^" + std::to_string(d_) +
                                     " exceeds size bound " + std::to_string(size_bound));
        }
        order_ = order;
        q_ = 1;
        for (std::uint32_t i = 0; i < e; ++i) q_ *= p;
        mult_order_ = order_ - 1;

        place_.resize(d_);
        std::uint64_t pw = 1;
        for (std::size_t i = 0; i < d_; ++i) {
            place_[i] = pw;
            pw *= p;
        }
        const auto mod = detail::smallest_irreducible(p, d_);
        modulus_.assign(mod.begin(), mod.end());

        build_frobenius();
        build_trace();
        generator_ = find_primitive();
        if (build_tables && order_ <= kTableThreshold) build_log_tables();
        qpow_mod_.resize(n_);
        for (std::uint32_t i = 0; i < n_; ++i) qpow_mod_[i] = mult_order_ == 0 ? 0 : mod_u64(big_pow(q_, i), mult_order_);
    }

    FieldCtx(const FieldCtx&) = delete;
    FieldCtx& operator=(const FieldCtx&) = delete;

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t e() const noexcept { return e_; }
    std::uint32_t n() const noexcept { return n_; }
    /// Degree of the big field over F_p.
    std::size_t degree() const noexcept { return d_; }
    std::uint64_t q() const noexcept { return q_; }
    std::uint64_t order() const noexcept { return order_; }
    /// q^n - 1, the order of the multiplicative group.
    std::uint64_t mult_order() const noexcept { return mult_order_; }
    FieldSpec spec() const { return FieldSpec{p_, e_, n_}; }
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
    bool has_tables() const noexcept { return !log_.empty(); }
    Code generator_code() const noexcept { return generator_; }

    FieldElem elem(Code c) const;
    FieldElem zero() const;
    FieldElem one() const;
    /// Image of an integer under Z -> F_p ⊂ F_{q^n}.
    FieldElem from_int(std::int64_t v) const;
    FieldElem from_coeffs(std::span<const std::uint32_t> coeffs) const;
    FieldElem generator() const;

    // ---- code-level arithmetic -------------------------------------------

    std::array<std::uint32_t, kMaxDegree> digits(Code a) const noexcept {
        std::array<std::uint32_t, kMaxDegree> out{};
        for (std::size_t i = 0; i < d_; ++i) {
            out[i] = static_cast<std::uint32_t>(a % p_);
            a /= p_;
        }
        return out;
    }

    Code encode(const std::array<std::uint32_t, kMaxDegree>& dig) const noexcept {
        std::uint64_t c = 0;
        for (std::size_t i = d_; i-- > 0;) c = c * p_ + dig[i];
        return static_cast<Code>(c);
    }

    Code add_generic(Code a, Code b) const noexcept {
        if (p_ == 2) return a ^ b;
        auto x = digits(a);
        const auto y = digits(b);
        for (std::size_t i = 0; i < d_; ++i) x[i] = (x[i] + y[i]) % p_;
        return encode(x);
    }

    Code neg(Code a) const noexcept {
        if (p_ == 2) return a;
        auto x = digits(a);
        for (std::size_t i = 0; i < d_; ++i) x[i] = x[i] == 0 ? 0 : p_ - x[i];
        return encode(x);
    }

    Code mul_generic(Code a, Code b) const noexcept {
        if (a == 0 || b == 0) return 0;
        const auto x = digits(a);
        const auto y = digits(b);
        std::array<std::uint64_t, 2 * kMaxDegree> prod{};
        for (std::size_t i = 0; i < d_; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < d_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p_;
        }
        for (std::size_t k = 2 * d_ - 1; k-- > d_;) {
            const std::uint64_t c = prod[k];
            if (c == 0) continue;
            prod[k] = 0;
            // y^k = y^{k-d} * y^d and y^d = -(m_0 + ... + m_{d-1} y^{d-1})
            for (std::size_t i = 0; i < d_; ++i)
                prod[k - d_ + i] = (prod[k - d_ + i] + c * (p_ - modulus_[i])) % p_;
        }
        std::array<std::uint32_t, kMaxDegree> out{};
        for (std::size_t i = 0; i < d_; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
        return encode(out);
    }

    Code pow_generic(Code a, std::uint64_t k) const noexcept {
        if (k == 0) return 1;
        if (a == 0) return 0;
        k %= mult_order_;
        if (k == 0) return 1;
        Code r = 1;
        Code b = a;
        while (k) {
            if (k & 1U) r = mul_generic(r, b);
            b = mul_generic(b, b);
            k >>= 1U;
        }
        return r;
    }

    Code inv_generic(Code a) const noexcept { return a == 0 ? 0 : pow_generic(a, order_ - 2); }

    Code mul_table(Code a, Code b) const noexcept {
        if (a == 0 || b == 0) return 0;
        std::uint64_t s = std::uint64_t{log_[a]} + log_[b];
        if (s >= mult_order_) s -= mult_order_;
        return antilog_[s];
    }

    Code add_zech(Code a, Code b) const noexcept {
        if (a == 0) return b;
        if (b == 0) return a;
        const std::uint64_t la = log_[a];
        const std::uint64_t lb = log_[b];
        const std::uint64_t k = lb >= la ? lb - la : lb + mult_order_ - la;
        const Code z = zech_[k];
        if (z == kNoLog) return 0;
        std::uint64_t s = la + z;
        if (s >= mult_order_) s -= mult_order_;
        return antilog_[s];
    }

    Code inv_table(Code a) const noexcept {
        if (a == 0) return 0;
        const std::uint64_t la = log_[a];
        return antilog_[la == 0 ? 0 : mult_order_ - la];
    }

    Code pow_table(Code a, std::uint64_t k) const noexcept {
        if (k == 0) return 1;
        if (a == 0) return 0;
        return antilog_[(std::uint64_t{log_[a]} * (k % mult_order_)) % mult_order_];
    }

    Code add(Code a, Code b) const noexcept { return add_generic(a, b); }
    Code sub(Code a, Code b) const noexcept { return add_generic(a, neg(b)); }
    Code mul(Code a, Code b) const noexcept { return has_tables() ? mul_table(a, b) : mul_generic(a, b); }
    Code inv(Code a) const noexcept { return has_tables() ? inv_table(a) : inv_generic(a); }
    Code pow(Code a, std::uint64_t k) const noexcept { return has_tables() ? pow_table(a, k) : pow_generic(a, k); }

    /// x -> x^{q^i} through the precomputed F_p-linear matrix.
    Code frob_matrix(Code a, std::uint64_t i) const noexcept {
        const auto& mat = frob_mats_[i % n_];
        const auto x = digits(a);
        std::array<std::uint32_t, kMaxDegree> out{};
        for (std::size_t r = 0; r < d_; ++r) {
            std::uint64_t acc = 0;
            for (std::size_t c = 0; c < d_; ++c) acc += std::uint64_t{mat[r * d_ + c]} * x[c];
            out[r] = static_cast<std::uint32_t>(acc % p_);
        }
        return encode(out);
    }

    Code frob(Code a, std::uint64_t i) const noexcept {
        if (has_tables()) return a == 0 ? 0 : antilog_[(std::uint64_t{log_[a]} * qpow_mod_[i % n_]) % mult_order_];
        return frob_matrix(a, i);
    }

    /// Absolute trace F_{q^n} -> F_p as a residue in [0, p).
    std::uint32_t abs_trace(Code a) const noexcept {
        const auto x = digits(a);
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < d_; ++i) acc += std::uint64_t{x[i]} * trace_basis_[i];
        return static_cast<std::uint32_t>(acc % p_);
    }

    /// Discrete log to the fixed generator; requires tables and a != 0.
    std::optional<std::uint64_t> log(Code a) const noexcept {
        if (!has_tables() || a == 0) return std::nullopt;
        return log_[a];
    }

private:
    void build_frobenius() {
        // Column j of the i-th matrix holds the digits of (y^j)^{q^i}.
        std::vector<Code> basis_img(d_);
        for (std::size_t j = 0; j < d_; ++j) {
            const Code yj = static_cast<Code>(place_[j]);
            basis_img[j] = pow_generic_q(yj);
        }
        frob_mats_.assign(n_, std::vector<std::uint32_t>(d_ * d_, 0));
        std::vector<Code> cur(d_);
        for (std::size_t j = 0; j < d_; ++j) cur[j] = static_cast<Code>(place_[j]);
        for (std::uint32_t i = 0; i < n_; ++i) {
            auto& mat = frob_mats_[i];
            for (std::size_t j = 0; j < d_; ++j) {
                const auto dig = digits(cur[j]);
                for (std::size_t r = 0; r < d_; ++r) mat[r * d_ + j] = dig[r];
            }
            for (std::size_t j = 0; j < d_; ++j) cur[j] = pow_generic_q(cur[j]);
        }
    }

    Code pow_generic_q(Code a) const noexcept {
        // q may exceed the group order only when n = 1, where x^q = x anyway.
        if (mult_order_ == 0) return a;
        return pow_generic(a, q_ % mult_order_ == 0 ? mult_order_ : q_ % mult_order_);
    }

    void build_trace() {
        trace_basis_.resize(d_);
        for (std::size_t j = 0; j < d_; ++j) {
            Code x = static_cast<Code>(place_[j]);
            Code acc = 0;
            for (std::size_t k = 0; k < d_; ++k) {
                acc = add_generic(acc, x);
                x = pow_generic(x, p_);
            }
            if (acc >= p_) throw InternalError("absolute trace left the prime field");
            trace_basis_[j] = acc;
        }
    }

    Code find_primitive() const {
        if (order_ == 2) return 1;
        const auto factors = prime_factors(mult_order_);
        for (Code c = 1; c < order_; ++c) {
            bool primitive = true;
            for (std::uint64_t r : factors) {
                if (pow_generic(c, mult_order_ / r) == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) return c;
        }
        throw InternalError("field has no primitive element");
    }

    void build_log_tables() {
        log_.assign(order_, kNoLog);
        antilog_.assign(mult_order_, 0);
        Code x = 1;
        for (std::uint64_t k = 0; k < mult_order_; ++k) {
            antilog_[k] = x;
            log_[x] = static_cast<Code>(k);
            x = mul_generic(x, generator_);
        }
        zech_.assign(mult_order_, kNoLog);
        for (std::uint64_t k = 0; k < mult_order_; ++k) {
            const Code s = add_generic(1, antilog_[k]);
            zech_[k] = s == 0 ? kNoLog : log_[s];
        }
    }

    std::uint32_t p_;
    std::uint32_t e_;
    std::uint32_t n_;
    std::size_t d_;
    std::uint64_t q_ = 0;
    std::uint64_t order_ = 0;
    std::uint64_t mult_order_ = 0;
    std::vector<std::uint64_t> place_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::vector<std::uint32_t>> frob_mats_;
    std::vector<std::uint32_t> trace_basis_;
    std::vector<std::uint64_t> qpow_mod_;
    Code generator_ = 1;
    std::vector<Code> log_;
    std::vector<Code> antilog_;
    std::vector<Code> zech_;
};

/// Value type for an element of F_{q^n}.
class FieldElem {
public:
    FieldElem() = default;
    FieldElem(const FieldCtx* ctx, Code code) : ctx_(ctx), code_(code) {}

    const FieldCtx& ctx() const {
        if (ctx_ == nullptr) throw PreconditionError("field element has no context");
        return *ctx_;
    }
    const FieldCtx* ctx_ptr() const noexcept { return ctx_; }
    Code code() const noexcept { return code_; }
    bool is_zero() const noexcept { return code_ == 0; }
    bool is_one() const noexcept { return code_ == 1; }

    /// Coefficients over F_p, constant term first.
    std::vector<std::uint32_t> coeffs() const {
        const auto& c = ctx();
        const auto dig = c.digits(code_);
        return {dig.begin(), dig.begin() + static_cast<std::ptrdiff_t>(c.degree())};
    }

    friend bool operator==(const FieldElem& a, const FieldElem& b) noexcept {
        return a.ctx_ == b.ctx_ && a.code_ == b.code_;
    }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
        const auto& c = same(a, b);
        return {&c, c.add(a.code_, b.code_)};
    }
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
        const auto& c = same(a, b);
        return {&c, c.sub(a.code_, b.code_)};
    }
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
        const auto& c = same(a, b);
        return {&c, c.mul(a.code_, b.code_)};
    }
    friend FieldElem operator-(const FieldElem& a) { return {&a.ctx(), a.ctx().neg(a.code_)}; }
    FieldElem& operator+=(const FieldElem& b) { return *this = *this + b; }
    FieldElem& operator-=(const FieldElem& b) { return *this = *this - b; }
    FieldElem& operator*=(const FieldElem& b) { return *this = *this * b; }

    static const FieldCtx& same(const FieldElem& a, const FieldElem& b) {
        if (a.ctx_ != b.ctx_ || a.ctx_ == nullptr) throw ContextMismatch();
        return *a.ctx_;
    }

private:
    const FieldCtx* ctx_ = nullptr;
    Code code_ = 0;
};

inline FieldElem FieldCtx::elem(Code c) const {
    if (c >= order_) throw PreconditionError("element code " + std::to_string(c) + " out of range");
    return {this, c};
}
inline FieldElem FieldCtx::zero() const { return {this, 0}; }
inline FieldElem FieldCtx::one() const { return {this, 1}; }
inline FieldElem FieldCtx::generator() const { return {this, generator_}; }
inline FieldElem FieldCtx::from_int(std::int64_t v) const {
    const std::int64_t r = ((v % static_cast<std::int64_t>(p_)) + p_) % p_;
    return {this, static_cast<Code>(r)};
}
inline FieldElem FieldCtx::from_coeffs(std::span<const std::uint32_t> coeffs) const {
    if (coeffs.size() != d_)
        throw PreconditionError("expected " + std::to_string(d_) + " coefficients, got " + std::to_string(coeffs.size()));
    std::array<std::uint32_t, kMaxDegree> dig{};
    for (std::size_t i = 0; i < d_; ++i) {
        if (coeffs[i] >= p_) throw PreconditionError("coefficient out of range [0, p)");
        dig[i] = coeffs[i];
    }
    return {this, encode(dig)};
}

inline Field make_field(std::uint32_t p, std::uint32_t e, std::uint32_t n,
                        std::uint64_t size_bound = FieldCtx::kDefaultSizeBound, bool build_tables = true) {
    return std::make_shared<const FieldCtx>(p, e, n, size_bound, build_tables);
}

inline Field make_field(const FieldSpec& spec, std::uint64_t size_bound = FieldCtx::kDefaultSizeBound,
                        bool build_tables = true) {
    return make_field(spec.p, spec.e, spec.n, size_bound, build_tables);
}

// ---- element-level operations ---------------------------------------------

inline FieldElem add(const FieldElem& a, const FieldElem& b) { return a + b; }
inline FieldElem sub(const FieldElem& a, const FieldElem& b) { return a - b; }
inline FieldElem mul(const FieldElem& a, const FieldElem& b) { return a * b; }
inline FieldElem neg(const FieldElem& a) { return -a; }

/// a^{q^n - 2}; inv(0) = 0.
inline FieldElem inv(const FieldElem& a) { return {&a.ctx(), a.ctx().inv(a.code())}; }

inline FieldElem pow(const FieldElem& a, std::uint64_t k) { return {&a.ctx(), a.ctx().pow(a.code(), k)}; }

/// Arbitrary-precision exponent. Negative k means (a^{-1})^{|k|}.
inline FieldElem pow(const FieldElem& a, const BigInt& k) {
    const auto& c = a.ctx();
    if (k == 0) return c.one();
    if (a.is_zero()) return c.zero();
    return {&c, c.pow(a.code(), mod_u64(k, c.mult_order()))};
}

inline FieldElem frob_q(const FieldElem& a, std::uint64_t i) { return {&a.ctx(), a.ctx().frob(a.code(), i)}; }

inline FieldElem trace_rel(const FieldElem& a) {
    const auto& c = a.ctx();
    Code acc = 0;
    for (std::uint32_t i = 0; i < c.n(); ++i) acc = c.add(acc, c.frob(a.code(), i));
    return {&c, acc};
}

inline FieldElem norm_rel(const FieldElem& a) {
    const auto& c = a.ctx();
    Code acc = 1;
    for (std::uint32_t i = 0; i < c.n(); ++i) acc = c.mul(acc, c.frob(a.code(), i));
    return {&c, acc};
}

/// a = 0 or a^{(q^n-1)/2} = 1. Every element is a square when q is even.
inline bool is_square(const FieldElem& a) {
    const auto& c = a.ctx();
    if (a.is_zero() || c.p() == 2) return true;
    return c.pow(a.code(), c.mult_order() / 2) == 1;
}

/// a ∈ F_{q^d}, i.e. a^{q^d} = a; requires d | n.
inline bool in_subfield(const FieldElem& a, std::uint32_t d) {
    const auto& c = a.ctx();
    if (d == 0 || c.n() % d != 0)
        throw PreconditionError("subfield degree " + std::to_string(d) + " does not divide n=" + std::to_string(c.n()));
    return frob_q(a, d) == a;
}

inline FieldElem find_generator(const FieldCtx& ctx) { return ctx.generator(); }

/// All elements in code order.
class ElementRange {
public:
    class iterator {
    public:
        using value_type = FieldElem;
        using difference_type = std::ptrdiff_t;
        iterator() = default;
        iterator(const FieldCtx* c, std::uint64_t i) : ctx_(c), i_(i) {}
        FieldElem operator*() const { return {ctx_, static_cast<Code>(i_)}; }
        iterator& operator++() {
            ++i_;
            return *this;
        }
        iterator operator++(int) {
            auto t = *this;
            ++i_;
            return t;
        }
        friend bool operator==(const iterator& a, const iterator& b) { return a.i_ == b.i_; }

    private:
        const FieldCtx* ctx_ = nullptr;
        std::uint64_t i_ = 0;
    };

    ElementRange(const FieldCtx& ctx, std::uint64_t first) : ctx_(&ctx), first_(first) {}
    iterator begin() const { return {ctx_, first_}; }
    iterator end() const { return {ctx_, ctx_->order()}; }
    std::uint64_t size() const { return ctx_->order() - first_; }

private:
    const FieldCtx* ctx_;
    std::uint64_t first_;
};

inline ElementRange enumerate(const FieldCtx& ctx) { return {ctx, 0}; }
inline ElementRange enumerate_nonzero(const FieldCtx& ctx) { return {ctx, 1}; }

/// Elements of the subfield F_q in code order.
inline std::vector<FieldElem> base_field_elements(const FieldCtx& ctx) {
    std::vector<FieldElem> out;
    out.reserve(ctx.q());
    for (auto x : enumerate(ctx))
        if (ctx.frob(x.code(), 1) == x.code()) out.push_back(x);
    return out;
}

/// Human-readable rendering: coefficient vector, plus g^k when logs exist.
inline std::string to_string(const FieldElem& a) {
    std::string s = "[";
    const auto cs = a.coeffs();
    for (std::size_t i = 0; i < cs.size(); ++i) s += (i ? "," : "") + std::to_string(cs[i]);
    s += "]";
    if (auto lg = a.ctx().log(a.code())) s += "=g^" + std::to_string(*lg);
    return s;
}

// Exponents that show up everywhere: q^i, as exact integers.
inline BigInt q_pow(const FieldCtx& ctx, std::uint64_t i) { return big_pow(ctx.q(), i); }

/// Reduces k >= 0 for use with FieldCtx::pow without changing x^k as a map:
/// 0 stays 0, positive k lands in [1, q^n - 1].
inline std::uint64_t reduce_exponent(const FieldCtx& ctx, const BigInt& k) {
    if (k == 0) return 0;
    const std::uint64_t r = mod_u64(k, ctx.mult_order());
    return r == 0 ? ctx.mult_order() : r;
}

}  // namespace ppinv
