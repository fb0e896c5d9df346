#pragma once

#include <stdexcept>
#include <string>

namespace ppinv {

/// A caller-supplied argument violates a documented precondition
/// (non-prime characteristic, N(-a) = 1, parity gate, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Elements or polynomials built over different field contexts were combined.
class ContextMismatch : public std::invalid_argument {
public:
    ContextMismatch() : std::invalid_argument("operands belong to different field contexts") {}
};

/// A field or an exhaustive scan exceeds the configured size bound.
class ScanBoundError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// An internal consistency check failed. Seeing one of these means a bug,
/// not bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace ppinv
