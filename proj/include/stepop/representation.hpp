#pragma once

#include <vector>

#include "stepop/linalg.hpp"
#include "stepop/operator.hpp"

namespace stepop {

/// Canonical flat layout of the block family: one position per (alpha, i)
/// with alpha in canonical subset order and i ranked over the complement of
/// alpha. Total positions sum_alpha p^(N-|alpha|) = (p+1)^N.
class BlockLayout {
public:
    BlockLayout(int n_dims, int p);

    [[nodiscard]] int n_dims() const { return n_dims_; }
    [[nodiscard]] int p() const { return p_; }
    [[nodiscard]] const std::vector<DimSubset>& subsets() const { return subsets_; }
    [[nodiscard]] std::size_t total_positions() const { return total_; }

    /// Number of outer indices for alpha: p^(N-|alpha|).
    [[nodiscard]] std::uint64_t outer_count(DimSubset alpha) const;
    /// Block dimension for alpha: p^|alpha|.
    [[nodiscard]] std::uint64_t block_dim(DimSubset alpha) const;
    [[nodiscard]] std::size_t position(DimSubset alpha, std::uint64_t i_rank) const;

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t s = 0; s < subsets_.size(); ++s) {
            const DimSubset alpha = subsets_[s];
            const std::uint64_t outers = outer_count(alpha);
            for (std::uint64_t i = 0; i < outers; ++i) f(alpha, i, offsets_[s] + i);
        }
    }

private:
    int n_dims_;
    int p_;
    std::vector<DimSubset> subsets_;
    std::vector<std::size_t> offsets_;
    std::size_t total_;
};

/// Image of an operator under the block isomorphism: a complex
/// p^|alpha| x p^|alpha| matrix for every (alpha, i in P_complement(alpha)).
/// Matrix entry (m, n) holds b_alpha(i <> m, n).
class Representation {
public:
    Representation(int n_dims, int p);

    [[nodiscard]] int n_dims() const { return layout_.n_dims(); }
    [[nodiscard]] int p() const { return layout_.p(); }
    [[nodiscard]] const BlockLayout& layout() const { return layout_; }

    [[nodiscard]] const CMatrix& block(DimSubset alpha, std::uint64_t i_rank) const;
    CMatrix& block(DimSubset alpha, std::uint64_t i_rank);

private:
    BlockLayout layout_;
    std::vector<CMatrix> blocks_;
};

/// The forward map: b_alpha(i,m) = sum_{beta <= alpha}
/// [i and m agree on alpha\beta] a_beta(i, m_beta), assembled into blocks.
Representation sigma(const StepOperator& a);

/// The inverse map: a_alpha(i,m) = sum_{beta <= alpha} (-1)^|alpha\beta|
/// [i and m agree on alpha\beta] b_beta(i, m_beta). Exact on integers.
StepOperator sigma_inverse(const Representation& r);

Representation rep_add(const Representation& r, const Representation& s);
Representation rep_scale(Complex lambda, const Representation& r);

/// Blockwise matrix product aligned by (alpha, i).
Representation rep_multiply(const Representation& r, const Representation& s);

/// Blockwise inverse; throws SingularBlockError naming the offending
/// (alpha, i) when a block fails the pivot test.
Representation rep_inverse(const Representation& r);

/// Inverse operator through the block picture.
StepOperator operator_invert(const StepOperator& a);

/// Solve a u = f for a step function u at the refinement of f.
StepFunction operator_solve(const StepOperator& a, const StepFunction& f);

/// Operator exponential: blockwise expm pulled back through the inverse map.
StepOperator operator_exp(const StepOperator& a);

double max_block_difference(const Representation& r, const Representation& s);

}  // namespace stepop
