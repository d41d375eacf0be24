#pragma once

#include <random>

#include "stepop/oracle.hpp"
#include "stepop/representation.hpp"
#include "stepop/spectral.hpp"

namespace stepop::testing {

/// Random integer-coefficient operator nudged along the identity until every
/// block passes the pivot test.
inline StepOperator random_invertible_operator(std::mt19937& rng, int n_dims, int p, int lo = -2,
                                               int hi = 2) {
    StepOperator a = random_integer_operator(rng, n_dims, p, lo, hi);
    for (int shift = 0; shift < 64; ++shift) {
        if (is_invertible(a).invertible) return a;
        a = add(a, identity_operator(n_dims, p));
    }
    throw Error("could not reach an invertible operator");
}

/// Integer-preserving singular instance: zero out one block of the
/// representation and pull the result back.
inline StepOperator with_zeroed_block(const StepOperator& a, std::size_t flat_choice) {
    Representation rep = sigma(a);
    std::size_t target = flat_choice % rep.layout().total_positions();
    rep.layout().for_each([&](DimSubset alpha, std::uint64_t i, std::size_t pos) {
        if (pos == target) rep.block(alpha, i).setZero();
    });
    return sigma_inverse(rep);
}

}  // namespace stepop::testing
