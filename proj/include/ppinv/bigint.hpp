#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "ppinv/error.hpp"

namespace ppinv {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(std::uint64_t base, std::uint64_t exp) {
    BigInt r = 1;
    BigInt b = base;
    while (exp) {
        if (exp & 1U) r *= b;
        b *= b;
        exp >>= 1U;
    }
    return r;
}

/// Least non-negative residue of `x` modulo `m` (m > 0).
inline std::uint64_t mod_u64(const BigInt& x, std::uint64_t m) {
    BigInt r = x % m;
    if (r < 0) r += m;
    return r.convert_to<std::uint64_t>();
}

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::gcd(a, b);
}

inline std::string to_decimal(const BigInt& x) { return x.str(); }

inline BigInt from_decimal(const std::string& s) {
    if (s.empty()) throw PreconditionError("empty integer literal");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw PreconditionError("malformed integer literal '" + s + "'");
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9') throw PreconditionError("malformed integer literal '" + s + "'");
    return BigInt(s);
}

/// Exact halving; throws unless `x` is even.
inline BigInt exact_half(const BigInt& x) {
    if (x % 2 != 0) throw PreconditionError("half-exponent " + x.str() + " is not an integer");
    return x / 2;
}

}  // namespace ppinv
