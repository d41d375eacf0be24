#pragma once

#include <cstdint>
#include <vector>

#include "stepop/errors.hpp"

namespace stepop {

inline constexpr int kMaxDims = 16;

/// Hard cap on the per-axis state count p^N (and (pq)^N for grids).
inline constexpr std::uint64_t kMaxStates = std::uint64_t{1} << 20;

std::uint64_t ipow(std::uint64_t base, int exp);

/// Subset of the dimension set {1..N}, stored as a bitmask with dimension j
/// on bit j-1. Dimensions are 1-based everywhere outside this class.
class DimSubset {
public:
    constexpr DimSubset() = default;
    constexpr explicit DimSubset(std::uint32_t bits) : bits_(bits) {}

    static DimSubset of(std::initializer_list<int> dims);
    static DimSubset full(int n_dims);

    [[nodiscard]] constexpr std::uint32_t bits() const { return bits_; }
    [[nodiscard]] int size() const { return __builtin_popcount(bits_); }
    [[nodiscard]] constexpr bool empty() const { return bits_ == 0; }

    [[nodiscard]] bool contains(int dim) const;
    [[nodiscard]] constexpr bool contains_all(DimSubset s) const { return (s.bits_ & ~bits_) == 0; }
    [[nodiscard]] constexpr bool disjoint_with(DimSubset s) const { return (bits_ & s.bits_) == 0; }

    [[nodiscard]] constexpr DimSubset unite(DimSubset s) const { return DimSubset{bits_ | s.bits_}; }
    [[nodiscard]] constexpr DimSubset intersect(DimSubset s) const { return DimSubset{bits_ & s.bits_}; }
    [[nodiscard]] constexpr DimSubset minus(DimSubset s) const { return DimSubset{bits_ & ~s.bits_}; }
    [[nodiscard]] DimSubset complement(int n_dims) const;

    /// Member dimensions in increasing order, 1-based.
    [[nodiscard]] std::vector<int> dims() const;

    /// True when every set bit lies in 1..n_dims.
    [[nodiscard]] bool valid_for(int n_dims) const;

    friend constexpr bool operator==(DimSubset a, DimSubset b) { return a.bits_ == b.bits_; }
    friend constexpr bool operator!=(DimSubset a, DimSubset b) { return a.bits_ != b.bits_; }

private:
    std::uint32_t bits_ = 0;
};

/// Canonical subset order: popcount first, then bitmask value. All block
/// layouts and file formats iterate subsets in this order.
bool operator<(DimSubset a, DimSubset b);

/// Multi-index over a dimension subset: one entry in 1..p per member
/// dimension, stored in increasing dimension order.
class MultiIndex {
public:
    MultiIndex() = default;
    MultiIndex(DimSubset support, std::vector<int> entries);

    [[nodiscard]] DimSubset support() const { return support_; }
    [[nodiscard]] const std::vector<int>& entries() const { return entries_; }

    /// Entry at a member dimension (1-based); IndexError when absent.
    [[nodiscard]] int at(int dim) const;

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
        return a.support_ == b.support_ && a.entries_ == b.entries_;
    }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }

private:
    DimSubset support_;
    std::vector<int> entries_;
};

/// Merge of two multi-indices with disjoint supports; the result carries the
/// union support with components in increasing dimension order. Commutative.
MultiIndex diamond(const MultiIndex& x, const MultiIndex& y);

/// Components of x at the dimensions in alpha (alpha must lie inside the
/// support of x), order preserved.
MultiIndex restrict_to(const MultiIndex& x, DimSubset alpha);

/// Mixed-radix rank with the smallest dimension index as the most
/// significant digit: rank = sum_k (m_{alpha_k}-1) * p^(|alpha|-k).
std::uint64_t index_rank(const MultiIndex& x, int p);
MultiIndex index_unrank(DimSubset alpha, std::uint64_t r, int p);

/// All subsets of {1..n_dims} in canonical (popcount, bitmask) order.
std::vector<DimSubset> enumerate_subsets(int n_dims);

/// All multi-indices over alpha with entries in 1..p, ordered by rank.
std::vector<MultiIndex> enumerate_indices(DimSubset alpha, int p);

// Digit-array forms used in hot paths. `vals` is indexed by dimension
// (1-based, length at least kMaxDims+1); only positions in alpha are touched.
std::uint64_t rank_digits(DimSubset alpha, const int* vals, int p);
void unrank_digits(DimSubset alpha, std::uint64_t r, int p, int* vals);

/// Visit every subset of `mask` (including the empty set and mask itself).
template <typename F>
void for_each_subset_of(DimSubset mask, F&& f) {
    std::uint32_t m = mask.bits();
    std::uint32_t sub = m;
    while (true) {
        f(DimSubset{sub});
        if (sub == 0) break;
        sub = (sub - 1) & m;
    }
}

}  // namespace stepop
