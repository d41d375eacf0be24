#include "stepop/spectral.hpp"

#include <algorithm>

namespace stepop {

SpectrumReport spectrum(const StepOperator& a) {
    const Representation rep = sigma(a);
    const DimSubset eta = DimSubset::full(a.n_dims());
    SpectrumReport report{a.n_dims(), a.p(), {}};
    rep.layout().for_each([&](DimSubset alpha, std::uint64_t i, std::size_t) {
        const auto label = (alpha == eta) ? SpectrumLabel::discrete : SpectrumLabel::essential;
        for (const Complex& ev : eigvals(rep.block(alpha, i)))
            report.entries.push_back({ev, alpha, i, label});
    });
    return report;
}

Complex TraceDetTuple::component(DimSubset alpha, std::uint64_t i_rank) const {
    return components[BlockLayout{n_dims, p}.position(alpha, i_rank)];
}

TraceDetTuple trace_tuple(const StepOperator& a) {
    const Representation rep = sigma(a);
    TraceDetTuple out{a.n_dims(), a.p(), {}};
    out.components.resize(rep.layout().total_positions());
    rep.layout().for_each([&](DimSubset alpha, std::uint64_t i, std::size_t pos) {
        out.components[pos] = rep.block(alpha, i).trace();
    });
    return out;
}

TraceDetTuple det_tuple(const StepOperator& a) {
    const Representation rep = sigma(a);
    TraceDetTuple out{a.n_dims(), a.p(), {}};
    out.components.resize(rep.layout().total_positions());
    rep.layout().for_each([&](DimSubset alpha, std::uint64_t i, std::size_t pos) {
        out.components[pos] = det(rep.block(alpha, i));
    });
    return out;
}

InvertibilityVerdict is_invertible(const StepOperator& a) {
    const Representation rep = sigma(a);
    InvertibilityVerdict verdict{true, std::nullopt};
    rep.layout().for_each([&](DimSubset alpha, std::uint64_t i, std::size_t) {
        if (!verdict.invertible) return;
        if (is_singular(rep.block(alpha, i))) {
            auto evs = eigvals(rep.block(alpha, i));
            const auto smallest = *std::min_element(
                evs.begin(), evs.end(),
                [](const Complex& x, const Complex& y) { return std::abs(x) < std::abs(y); });
            verdict = {false, SingularWitness{alpha, i, smallest}};
        }
    });
    return verdict;
}

}  // namespace stepop
