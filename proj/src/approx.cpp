#include "stepop/approx.hpp"

#include <cmath>

namespace stepop {

namespace {

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr int kQuadPoints = 8;
constexpr double kQuadNode[kQuadPoints] = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr double kQuadWeight[kQuadPoints] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

}  // namespace

SampledKernel sample_kernel(
    int n_dims, int resolution, DimSubset alpha,
    const std::function<Complex(const std::vector<double>& k, const std::vector<double>& x)>& f) {
    if (resolution < 1) throw SizeGuardError("resolution must be >= 1");
    SampledKernel kernel{n_dims, resolution, {}};
    const DimSubset eta = DimSubset::full(n_dims);
    auto& samples = kernel.terms[alpha];
    samples.resize(kernel.k_count() * kernel.x_count(alpha));

    int kd[kMaxDims + 1];
    int xd[kMaxDims + 1];
    std::vector<double> k_point(static_cast<std::size_t>(n_dims));
    std::vector<double> x_point(static_cast<std::size_t>(alpha.size()));
    const auto adims = alpha.dims();
    for (std::uint64_t kr = 0; kr < kernel.k_count(); ++kr) {
        unrank_digits(eta, kr, resolution, kd);
        for (int d = 1; d <= n_dims; ++d)
            k_point[static_cast<std::size_t>(d - 1)] = (kd[d] - 0.5) / resolution;
        for (std::uint64_t xr = 0; xr < kernel.x_count(alpha); ++xr) {
            unrank_digits(alpha, xr, resolution, xd);
            for (std::size_t j = 0; j < adims.size(); ++j)
                x_point[j] = (xd[adims[j]] - 0.5) / resolution;
            samples[kr * kernel.x_count(alpha) + xr] = f(k_point, x_point);
        }
    }
    return kernel;
}

StepOperator project_kernel(const SampledKernel& kernel, int p) {
    if (p < 1) throw SizeGuardError("p must be >= 1");
    if (kernel.resolution % p != 0)
        throw ShapeError("sampling resolution is not divisible by p");
    const int n = kernel.n_dims;
    const int r = kernel.resolution;
    const int s = r / p;  // fine cells per coarse cell per axis
    const DimSubset eta = DimSubset::full(n);
    StepOperator a{n, p};

    int ci[kMaxDims + 1];  // coarse k-cell digits
    int cm[kMaxDims + 1];  // coarse x-cell digits over alpha
    int fk[kMaxDims + 1];  // fine k digits
    int fx[kMaxDims + 1];  // fine x digits over alpha
    for (const auto& [alpha, samples] : kernel.terms) {
        if (!alpha.valid_for(n)) throw ShapeError("kernel subset outside the dimension set");
        const std::uint64_t xc = kernel.x_count(alpha);
        if (samples.size() != kernel.k_count() * xc)
            throw ShapeError("kernel sample array has wrong length");
        auto& arr = a.ensure_term(alpha);
        const std::uint64_t mcount = a.index_count(alpha);
        const std::uint64_t k_off = ipow(static_cast<std::uint64_t>(s), n);
        const std::uint64_t x_off = ipow(static_cast<std::uint64_t>(s), alpha.size());
        const double cell_scale =
            1.0 / (static_cast<double>(k_off) * static_cast<double>(x_off) *
                   static_cast<double>(ipow(static_cast<std::uint64_t>(p), alpha.size())));
        for (std::uint64_t ir = 0; ir < a.full_count(); ++ir) {
            unrank_digits(eta, ir, p, ci);
            for (std::uint64_t mr = 0; mr < mcount; ++mr) {
                unrank_digits(alpha, mr, p, cm);
                Complex sum{0.0};
                for (std::uint64_t ko = 0; ko < k_off; ++ko) {
                    unrank_digits(eta, ko, s, fk);
                    for (int d = 1; d <= n; ++d) fk[d] += (ci[d] - 1) * s;
                    const std::uint64_t kr = rank_digits(eta, fk, r);
                    for (std::uint64_t xo = 0; xo < x_off; ++xo) {
                        unrank_digits(alpha, xo, s, fx);
                        for (int d : alpha.dims()) fx[d] += (cm[d] - 1) * s;
                        sum += samples[kr * xc + rank_digits(alpha, fx, r)];
                    }
                }
                arr[ir * mcount + mr] = sum * cell_scale;
            }
        }
    }
    return a;
}

SampledFunction sample_function(int n_dims, int resolution,
                                const std::function<Complex(const std::vector<double>& k)>& f) {
    if (resolution < 1) throw SizeGuardError("resolution must be >= 1");
    SampledFunction out{n_dims, resolution, {}};
    const DimSubset eta = DimSubset::full(n_dims);
    out.values.resize(ipow(static_cast<std::uint64_t>(resolution), n_dims));
    int kd[kMaxDims + 1];
    std::vector<double> point(static_cast<std::size_t>(n_dims));
    for (std::uint64_t kr = 0; kr < out.values.size(); ++kr) {
        unrank_digits(eta, kr, resolution, kd);
        for (int d = 1; d <= n_dims; ++d)
            point[static_cast<std::size_t>(d - 1)] = (kd[d] - 0.5) / resolution;
        out.values[kr] = f(point);
    }
    return out;
}

StepFunction project_function(const SampledFunction& f, int p) {
    if (f.resolution % p != 0) throw ShapeError("sampling resolution is not divisible by p");
    const int n = f.n_dims;
    const int s = f.resolution / p;
    const DimSubset eta = DimSubset::full(n);
    StepFunction u{n, p, 1};
    int cd[kMaxDims + 1];
    int fd[kMaxDims + 1];
    const std::uint64_t offs = ipow(static_cast<std::uint64_t>(s), n);
    for (std::uint64_t cr = 0; cr < u.values().size(); ++cr) {
        unrank_digits(eta, cr, p, cd);
        Complex sum{0.0};
        for (std::uint64_t fo = 0; fo < offs; ++fo) {
            unrank_digits(eta, fo, s, fd);
            for (int d = 1; d <= n; ++d) fd[d] += (cd[d] - 1) * s;
            sum += f.values[rank_digits(eta, fd, f.resolution)];
        }
        u.values()[cr] = sum / static_cast<double>(offs);
    }
    return u;
}

FredholmSolution fredholm_solve(const SampledKernel& kernel, const SampledFunction& rhs,
                                Complex lambda, int p) {
    if (kernel.n_dims != rhs.n_dims) throw ShapeError("kernel and right side disagree on n_dims");
    const StepOperator system =
        add(identity_operator(kernel.n_dims, p), scale(lambda, project_kernel(kernel, p)));
    const StepFunction f_p = project_function(rhs, p);
    StepFunction u = operator_solve(system, f_p);
    const double residual = l2_norm(fn_subtract(apply(system, u), f_p));
    return {std::move(u), residual};
}

double l2_error_vs(const StepFunction& u,
                   const std::function<Complex(const std::vector<double>& k)>& exact) {
    const int n = u.n_dims();
    const int g = u.grid();
    const double h = 1.0 / g;
    const DimSubset eta = DimSubset::full(n);
    int gd[kMaxDims + 1];
    int qd[kMaxDims + 1];
    std::vector<double> point(static_cast<std::size_t>(n));
    double total = 0.0;
    const std::uint64_t cells = u.values().size();
    const std::uint64_t nodes = ipow(kQuadPoints, n);
    for (std::uint64_t c = 0; c < cells; ++c) {
        unrank_digits(eta, c, g, gd);
        const Complex v = u.values()[c];
        double cell_sum = 0.0;
        for (std::uint64_t t = 0; t < nodes; ++t) {
            unrank_digits(eta, t, kQuadPoints, qd);
            double w = 1.0;
            for (int d = 1; d <= n; ++d) {
                const double center = (gd[d] - 0.5) * h;
                point[static_cast<std::size_t>(d - 1)] = center + 0.5 * h * kQuadNode[qd[d] - 1];
                w *= 0.5 * kQuadWeight[qd[d] - 1];
            }
            cell_sum += w * std::norm(v - exact(point));
        }
        total += cell_sum * std::pow(h, n);
    }
    return std::sqrt(total);
}

}  // namespace stepop
