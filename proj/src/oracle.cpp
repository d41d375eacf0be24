#include "stepop/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stepop/representation.hpp"
#include "stepop/spectral.hpp"

namespace stepop {

DenseOperator build_dense(const StepOperator& a, int q) {
    if (q < 1) throw SizeGuardError("refinement q must be >= 1");
    const int n = a.n_dims();
    const double dim_check = std::pow(static_cast<double>(a.p()) * q, n);
    if (dim_check > static_cast<double>(kMaxDenseDim))
        throw SizeGuardError("(pq)^N exceeds the dense-oracle guard 4096");
    const auto dim = static_cast<Eigen::Index>(ipow(static_cast<std::uint64_t>(a.p()) * q, n));

    DenseOperator out{n, a.p(), q, CMatrix::Zero(dim, dim)};
    StepFunction indicator{n, a.p(), q};
    for (Eigen::Index col = 0; col < dim; ++col) {
        indicator.values().assign(static_cast<std::size_t>(dim), Complex{0.0});
        indicator.values()[static_cast<std::size_t>(col)] = Complex{1.0};
        const StepFunction image = apply(a, indicator);
        for (Eigen::Index row = 0; row < dim; ++row)
            out.matrix(row, col) = image.values()[static_cast<std::size_t>(row)];
    }
    return out;
}

SpectrumCheckResult oracle_spectrum_check(const StepOperator& a, int q, double tol) {
    const DenseOperator dense = build_dense(a, q);
    std::vector<Complex> dense_eigs = eigvals(dense.matrix);

    // Expected multiset from the block picture.
    const Representation rep = sigma(a);
    std::vector<Complex> block_eigs;
    rep.layout().for_each([&](DimSubset alpha, std::uint64_t i, std::size_t) {
        const int exponent = a.n_dims() - alpha.size();
        const std::uint64_t repeats = ipow(static_cast<std::uint64_t>(q - 1), exponent);
        if (repeats == 0) return;
        const auto evs = eigvals(rep.block(alpha, i));
        for (std::uint64_t k = 0; k < repeats; ++k)
            block_eigs.insert(block_eigs.end(), evs.begin(), evs.end());
    });

    std::sort(block_eigs.begin(), block_eigs.end(), complex_less);

    SpectrumCheckResult result{true, 0.0, {}, {}};
    if (dense_eigs.size() != block_eigs.size()) {
        result.pass = false;
        result.max_mismatch = std::numeric_limits<double>::infinity();
        result.unmatched_dense = dense_eigs;
        result.unmatched_blocks = block_eigs;
        return result;
    }

    // Greedy nearest-neighbour pairing; eigenvalue order is not stable
    // across the two computations.
    std::vector<bool> used(block_eigs.size(), false);
    for (const Complex& ev : dense_eigs) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_k = block_eigs.size();
        for (std::size_t k = 0; k < block_eigs.size(); ++k) {
            if (used[k]) continue;
            const double d = std::abs(ev - block_eigs[k]);
            if (d < best) {
                best = d;
                best_k = k;
            }
        }
        const double cap = tol * (1.0 + std::abs(ev));
        if (best_k == block_eigs.size() || best > cap) {
            result.pass = false;
            result.unmatched_dense.push_back(ev);
            result.max_mismatch = std::numeric_limits<double>::infinity();
            continue;
        }
        used[best_k] = true;
        result.max_mismatch = std::max(result.max_mismatch, best);
    }
    for (std::size_t k = 0; k < block_eigs.size(); ++k)
        if (!used[k]) result.unmatched_blocks.push_back(block_eigs[k]);
    return result;
}

InvertibilityCheckResult oracle_invertibility_check(const StepOperator& a) {
    const bool algebra = is_invertible(a).invertible;
    const bool dense = !is_singular(build_dense(a, 2).matrix);
    return {algebra == dense, algebra, dense};
}

StepOperator random_integer_operator(std::mt19937& rng, int n_dims, int p, int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    StepOperator a{n_dims, p};
    for (DimSubset alpha : enumerate_subsets(n_dims)) {
        auto& arr = a.ensure_term(alpha);
        for (Complex& c : arr) c = Complex{static_cast<double>(dist(rng))};
    }
    return a;
}

StepFunction random_integer_function(std::mt19937& rng, int n_dims, int p, int q, int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    StepFunction u{n_dims, p, q};
    for (Complex& c : u.values()) c = Complex{static_cast<double>(dist(rng))};
    return u;
}

}  // namespace stepop
