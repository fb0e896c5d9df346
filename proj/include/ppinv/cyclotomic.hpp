#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ppinv/bigint.hpp"
#include "ppinv/error.hpp"
#include "ppinv/field.hpp"

namespace ppinv {

/// Exact element of Z[ζ_p] in the basis ζ^0, ..., ζ^{p-2}.
///
/// ζ^{p-1} is rewritten as -(1 + ζ + ... + ζ^{p-2}), which makes the
/// representation unique; equality is componentwise.
class CycInt {
public:
    CycInt() = default;
    explicit CycInt(std::uint32_t p) : p_(p), c_(p - 1) {
        if (!is_prime(p)) throw PreconditionError("cyclotomic modulus must be prime");
    }

    static CycInt integer(std::uint32_t p, const BigInt& v) {
        CycInt r(p);
        r.c_[0] = v;
        return r;
    }

    /// ζ^k for any integer k.
    static CycInt zeta_pow(std::uint32_t p, std::int64_t k) {
        std::vector<BigInt> h(p);
        h[static_cast<std::size_t>(((k % p) + p) % p)] = 1;
        return from_histogram(p, h);
    }

    /// Σ_t h[t] ζ^t over t = 0..p-1.
    static CycInt from_histogram(std::uint32_t p, const std::vector<BigInt>& h) {
        CycInt r(p);
        if (h.size() != p) throw PreconditionError("histogram must have p buckets");
        for (std::uint32_t i = 0; i + 1 < p; ++i) r.c_[i] = h[i] - h[p - 1];
        return r;
    }

    static CycInt from_histogram(std::uint32_t p, const std::vector<std::int64_t>& h) {
        std::vector<BigInt> b(h.begin(), h.end());
        return from_histogram(p, b);
    }

    std::uint32_t p() const noexcept { return p_; }
    const std::vector<BigInt>& coeffs() const noexcept { return c_; }

    bool is_integer() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    friend bool operator==(const CycInt& a, const CycInt& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

    friend CycInt operator+(const CycInt& a, const CycInt& b) {
        check(a, b);
        CycInt r(a.p_);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }
    friend CycInt operator-(const CycInt& a, const CycInt& b) {
        check(a, b);
        CycInt r(a.p_);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
        return r;
    }
    friend CycInt operator-(const CycInt& a) {
        CycInt r(a.p_);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = -a.c_[i];
        return r;
    }
    friend CycInt operator*(const CycInt& a, const CycInt& b) {
        check(a, b);
        const std::uint32_t p = a.p_;
        // Multiply modulo ζ^p = 1 first, then reduce the ζ^{p-1} bucket.
        std::vector<BigInt> h(p);
        for (std::uint32_t i = 0; i + 1 < p; ++i) {
            if (a.c_[i] == 0) continue;
            for (std::uint32_t j = 0; j + 1 < p; ++j) {
                if (b.c_[j] == 0) continue;
                h[(i + j) % p] += a.c_[i] * b.c_[j];
            }
        }
        return from_histogram(p, h);
    }
    friend CycInt operator*(const BigInt& s, const CycInt& a) {
        CycInt r(a.p_);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = s * a.c_[i];
        return r;
    }
    CycInt& operator+=(const CycInt& b) { return *this = *this + b; }
    CycInt& operator*=(const CycInt& b) { return *this = *this * b; }

    CycInt pow(std::uint64_t k) const {
        CycInt r = integer(p_, 1);
        CycInt b = *this;
        while (k) {
            if (k & 1U) r *= b;
            b *= b;
            k >>= 1U;
        }
        return r;
    }

    /// Complex conjugation ζ -> ζ^{-1}.
    CycInt conj() const {
        std::vector<BigInt> h(p_);
        for (std::uint32_t i = 0; i + 1 < p_; ++i) h[(p_ - i) % p_] += c_[i];
        return from_histogram(p_, h);
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!s.empty()) s += c_[i] < 0 ? " - " : " + ";
            else if (c_[i] < 0) s += "-";
            const BigInt mag = c_[i] < 0 ? BigInt(-c_[i]) : c_[i];
            if (i == 0) s += mag.str();
            else s += (mag == 1 ? std::string() : mag.str() + "*") + "z^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }

private:
    static void check(const CycInt& a, const CycInt& b) {
        if (a.p_ != b.p_) throw PreconditionError("cyclotomic integers over different p");
    }

    std::uint32_t p_ = 2;
    std::vector<BigInt> c_ = std::vector<BigInt>(1);
};

}  // namespace ppinv
