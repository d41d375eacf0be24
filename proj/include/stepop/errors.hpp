#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stepop {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Construction-time limits violated (dimension count, state-space size).
struct SizeGuardError : Error {
    using Error::Error;
};

/// Multi-index misuse: overlapping merge supports, restriction outside the
/// support, out-of-range rank or entry.
struct IndexError : Error {
    using Error::Error;
};

/// Operands with incompatible (n_dims, p) or mismatched array shapes.
struct ShapeError : Error {
    using Error::Error;
};

struct SingularMatrixError : Error {
    using Error::Error;
};

/// A block of the matrix representation failed the pivot test. Carries the
/// block position: subset bitmask plus the rank of the outer index.
struct SingularBlockError : Error {
    std::uint32_t alpha_bits;
    std::uint64_t index_rank;

    SingularBlockError(std::uint32_t alpha, std::uint64_t idx, const std::string& what)
        : Error(what), alpha_bits(alpha), index_rank(idx) {}
};

struct EigenFailureError : Error {
    using Error::Error;
};

struct OverflowError : Error {
    using Error::Error;
};

/// Malformed input document; message names the offending field.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace stepop
