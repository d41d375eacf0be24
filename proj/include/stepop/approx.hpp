#pragma once

#include <functional>
#include <map>

#include "stepop/representation.hpp"

namespace stepop {

/// Kernel data sampled per subset alpha on the uniform fine grid: one value
/// per fine cell of [0,1)^N x [0,1)^|alpha|, laid out k-major (rank of the
/// k-cell index, radix `resolution`, then rank of the x-cell index). The
/// samples stand for cell values of A_alpha at the fine resolution.
struct SampledKernel {
    int n_dims;
    int resolution;  // fine cells per axis
    std::map<DimSubset, std::vector<Complex>> terms;

    [[nodiscard]] std::uint64_t k_count() const {
        return ipow(static_cast<std::uint64_t>(resolution), n_dims);
    }
    [[nodiscard]] std::uint64_t x_count(DimSubset alpha) const {
        return ipow(static_cast<std::uint64_t>(resolution), alpha.size());
    }
};

/// Sample a single-subset kernel from a callable evaluated at fine-cell
/// midpoints; k and x arrive as coordinate arrays ordered by dimension.
SampledKernel sample_kernel(
    int n_dims, int resolution, DimSubset alpha,
    const std::function<Complex(const std::vector<double>& k, const std::vector<double>& x)>& f);

/// L2-optimal piecewise-constant projection: a_alpha(i,m) = p^-|alpha| *
/// (mean of the samples over coarse cell (i,m)). Exact when the sampled
/// kernel is already p-step. Resolution must be divisible by p.
StepOperator project_kernel(const SampledKernel& kernel, int p);

/// Fine-grid samples of a plain function of k, one value per cell.
struct SampledFunction {
    int n_dims;
    int resolution;
    std::vector<Complex> values;
};

SampledFunction sample_function(int n_dims, int resolution,
                                const std::function<Complex(const std::vector<double>& k)>& f);

/// Project fine samples onto the p-step grid by cell means.
StepFunction project_function(const SampledFunction& f, int p);

struct FredholmSolution {
    StepFunction solution;
    /// L2 residual of the projected system, ||(I + lambda K_p) u - f_p||.
    double residual;
};

/// Second-kind equation u + lambda * integral(K(k,x) u(x) dx) = f: project
/// the full-set kernel and the right side onto the p-step grid and solve
/// through the block picture. Throws SingularBlockError when lambda hits a
/// characteristic value of the projected kernel.
FredholmSolution fredholm_solve(const SampledKernel& kernel, const SampledFunction& rhs,
                                Complex lambda, int p);

/// L2 distance between a step function and a callable, by per-cell
/// 8-point Gauss-Legendre quadrature per axis.
double l2_error_vs(const StepFunction& u,
                   const std::function<Complex(const std::vector<double>& k)>& exact);

}  // namespace stepop
