#include "stepop/indexing.hpp"

#include <algorithm>
#include <numeric>

namespace stepop {

std::uint64_t ipow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int k = 0; k < exp; ++k) r *= base;
    return r;
}

DimSubset DimSubset::of(std::initializer_list<int> dims) {
    std::uint32_t bits = 0;
    for (int d : dims) {
        if (d < 1 || d > kMaxDims) throw IndexError("dimension out of range 1..16: " + std::to_string(d));
        bits |= std::uint32_t{1} << (d - 1);
    }
    return DimSubset{bits};
}

DimSubset DimSubset::full(int n_dims) {
    if (n_dims < 0 || n_dims > kMaxDims)
        throw SizeGuardError("n_dims out of range 0..16: " + std::to_string(n_dims));
    return DimSubset{n_dims == 0 ? 0u : (std::uint32_t{1} << n_dims) - 1u};
}

bool DimSubset::contains(int dim) const {
    return dim >= 1 && dim <= kMaxDims && (bits_ >> (dim - 1)) & 1u;
}

DimSubset DimSubset::complement(int n_dims) const {
    return DimSubset{full(n_dims).bits_ & ~bits_};
}

std::vector<int> DimSubset::dims() const {
    std::vector<int> out;
    out.reserve(size());
    for (int d = 1; d <= kMaxDims; ++d)
        if (contains(d)) out.push_back(d);
    return out;
}

bool DimSubset::valid_for(int n_dims) const {
    return DimSubset::full(n_dims).contains_all(*this);
}

bool operator<(DimSubset a, DimSubset b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.bits() < b.bits();
}

MultiIndex::MultiIndex(DimSubset support, std::vector<int> entries)
    : support_(support), entries_(std::move(entries)) {
    if (static_cast<int>(entries_.size()) != support_.size())
        throw IndexError("entry count does not match support size");
}

int MultiIndex::at(int dim) const {
    if (!support_.contains(dim)) throw IndexError("dimension not in support: " + std::to_string(dim));
    int pos = 0;
    for (int d = 1; d < dim; ++d)
        if (support_.contains(d)) ++pos;
    return entries_[pos];
}

MultiIndex diamond(const MultiIndex& x, const MultiIndex& y) {
    if (!x.support().disjoint_with(y.support()))
        throw IndexError("diamond merge requires disjoint supports");
    DimSubset merged = x.support().unite(y.support());
    std::vector<int> entries;
    entries.reserve(static_cast<std::size_t>(merged.size()));
    std::size_t xi = 0, yi = 0;
    for (int d = 1; d <= kMaxDims; ++d) {
        if (x.support().contains(d))
            entries.push_back(x.entries()[xi++]);
        else if (y.support().contains(d))
            entries.push_back(y.entries()[yi++]);
    }
    return MultiIndex{merged, std::move(entries)};
}

MultiIndex restrict_to(const MultiIndex& x, DimSubset alpha) {
    if (!x.support().contains_all(alpha))
        throw IndexError("restriction target is not a subset of the support");
    std::vector<int> entries;
    entries.reserve(static_cast<std::size_t>(alpha.size()));
    std::size_t pos = 0;
    for (int d = 1; d <= kMaxDims; ++d) {
        if (!x.support().contains(d)) continue;
        if (alpha.contains(d)) entries.push_back(x.entries()[pos]);
        ++pos;
    }
    return MultiIndex{alpha, std::move(entries)};
}

std::uint64_t index_rank(const MultiIndex& x, int p) {
    std::uint64_t r = 0;
    for (int e : x.entries()) {
        if (e < 1 || e > p) throw IndexError("multi-index entry out of range 1..p");
        r = r * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(e - 1);
    }
    return r;
}

MultiIndex index_unrank(DimSubset alpha, std::uint64_t r, int p) {
    const int n = alpha.size();
    if (r >= ipow(static_cast<std::uint64_t>(p), n)) throw IndexError("rank out of range");
    std::vector<int> entries(static_cast<std::size_t>(n));
    for (int k = n - 1; k >= 0; --k) {
        entries[static_cast<std::size_t>(k)] = static_cast<int>(r % static_cast<std::uint64_t>(p)) + 1;
        r /= static_cast<std::uint64_t>(p);
    }
    return MultiIndex{alpha, std::move(entries)};
}

std::vector<DimSubset> enumerate_subsets(int n_dims) {
    if (n_dims < 0 || n_dims > kMaxDims)
        throw SizeGuardError("n_dims out of range 0..16: " + std::to_string(n_dims));
    std::vector<DimSubset> subsets;
    subsets.reserve(std::size_t{1} << n_dims);
    for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << n_dims); ++bits)
        subsets.emplace_back(bits);
    std::sort(subsets.begin(), subsets.end());
    return subsets;
}

std::vector<MultiIndex> enumerate_indices(DimSubset alpha, int p) {
    const std::uint64_t count = ipow(static_cast<std::uint64_t>(p), alpha.size());
    std::vector<MultiIndex> out;
    out.reserve(count);
    for (std::uint64_t r = 0; r < count; ++r) out.push_back(index_unrank(alpha, r, p));
    return out;
}

std::uint64_t rank_digits(DimSubset alpha, const int* vals, int p) {
    std::uint64_t r = 0;
    std::uint32_t bits = alpha.bits();
    while (bits) {
        const int d = __builtin_ctz(bits) + 1;
        bits &= bits - 1;
        r = r * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(vals[d] - 1);
    }
    return r;
}

void unrank_digits(DimSubset alpha, std::uint64_t r, int p, int* vals) {
    const auto dims = alpha.dims();
    for (auto it = dims.rbegin(); it != dims.rend(); ++it) {
        vals[*it] = static_cast<int>(r % static_cast<std::uint64_t>(p)) + 1;
        r /= static_cast<std::uint64_t>(p);
    }
}

}  // namespace stepop
