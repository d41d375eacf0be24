#pragma once

#include <random>
#include <vector>

#include "stepop/operator.hpp"

namespace stepop {

/// The operator restricted to (pq)-step functions, as the exact
/// (pq)^N x (pq)^N matrix in grid-rank order. Built column by column through
/// apply, independent of the block representation.
struct DenseOperator {
    int n_dims;
    int p;
    int q;
    CMatrix matrix;
};

inline constexpr std::uint64_t kMaxDenseDim = 4096;

DenseOperator build_dense(const StepOperator& a, int q);

struct SpectrumCheckResult {
    bool pass;
    /// Largest distance between a dense eigenvalue and its matched block
    /// eigenvalue; infinity when something stayed unmatched.
    double max_mismatch;
    std::vector<Complex> unmatched_dense;
    std::vector<Complex> unmatched_blocks;
};

/// Multiset comparison of eig(dense at refinement q) against the block
/// eigenvalues, each block repeated (q-1)^(N-|alpha|) times (0^0 = 1).
/// Greedy nearest matching capped at tol * (1 + |value|).
SpectrumCheckResult oracle_spectrum_check(const StepOperator& a, int q, double tol = 1e-7);

struct InvertibilityCheckResult {
    bool agree;
    bool algebra_verdict;
    bool dense_verdict;
};

/// Block-level invertibility must coincide with nonsingularity of the dense
/// matrix at q = 2 (each block's spectrum appears with multiplicity >= 1).
InvertibilityCheckResult oracle_invertibility_check(const StepOperator& a);

/// Uniform integer coefficients in [lo, hi] on every subset; the workhorse
/// of the randomized suites.
StepOperator random_integer_operator(std::mt19937& rng, int n_dims, int p, int lo = -2, int hi = 2);

/// Random step function with integer values in [lo, hi].
StepFunction random_integer_function(std::mt19937& rng, int n_dims, int p, int q, int lo = -2,
                                     int hi = 2);

}  // namespace stepop
