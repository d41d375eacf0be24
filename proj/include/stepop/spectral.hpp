#pragma once

#include <optional>
#include <vector>

#include "stepop/representation.hpp"

namespace stepop {

/// Eigenvalues of the full-subset block are discrete spectrum; every other
/// block contributes essential spectrum.
enum class SpectrumLabel { discrete, essential };

struct SpectrumEntry {
    Complex value;
    DimSubset source_subset;
    std::uint64_t source_index;  // rank of i over the complement of the subset
    SpectrumLabel label;
};

/// All block eigenvalues with provenance, blocks in canonical order and
/// eigenvalues in (real, imag) order within each block.
struct SpectrumReport {
    int n_dims;
    int p;
    std::vector<SpectrumEntry> entries;
};

SpectrumReport spectrum(const StepOperator& a);

/// The (p+1)^N-component blockwise trace or determinant tuple, components in
/// canonical (subset, index rank) order.
struct TraceDetTuple {
    int n_dims;
    int p;
    std::vector<Complex> components;

    [[nodiscard]] Complex component(DimSubset alpha, std::uint64_t i_rank) const;
};

TraceDetTuple trace_tuple(const StepOperator& a);
TraceDetTuple det_tuple(const StepOperator& a);

struct SingularWitness {
    DimSubset alpha;
    std::uint64_t index_rank;
    Complex smallest_eigenvalue;
};

struct InvertibilityVerdict {
    bool invertible;
    std::optional<SingularWitness> witness;
};

/// True iff every block passes the pivot test; otherwise reports the first
/// singular block in canonical order with its smallest-magnitude eigenvalue.
InvertibilityVerdict is_invertible(const StepOperator& a);

}  // namespace stepop
