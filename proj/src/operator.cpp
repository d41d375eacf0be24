#include "stepop/operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>

namespace stepop {

namespace {

void check_sizes(int n_dims, int p) {
    if (n_dims < 1 || n_dims > kMaxDims)
        throw SizeGuardError("n_dims out of range 1..16: " + std::to_string(n_dims));
    if (p < 1) throw SizeGuardError("p must be >= 1");
    double states = std::pow(static_cast<double>(p), n_dims);
    if (states > static_cast<double>(kMaxStates))
        throw SizeGuardError("p^N exceeds the 2^20 state guard");
}

void check_same_shape(const StepOperator& a, const StepOperator& b) {
    if (a.n_dims() != b.n_dims() || a.p() != b.p())
        throw ShapeError("operands have different (n_dims, p)");
}

}  // namespace

StepOperator::StepOperator(int n_dims, int p) : n_dims_(n_dims), p_(p) {
    check_sizes(n_dims, p);
    full_count_ = ipow(static_cast<std::uint64_t>(p), n_dims);
}

const std::vector<Complex>* StepOperator::term(DimSubset alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? nullptr : &it->second;
}

std::vector<Complex>& StepOperator::ensure_term(DimSubset alpha) {
    if (!alpha.valid_for(n_dims_)) throw IndexError("subset outside the dimension set");
    auto [it, inserted] = terms_.try_emplace(alpha);
    if (inserted) it->second.assign(full_count_ * index_count(alpha), Complex{0.0});
    return it->second;
}

void StepOperator::check_position(DimSubset alpha, std::uint64_t i_rank, std::uint64_t m_rank) const {
    if (!alpha.valid_for(n_dims_)) throw IndexError("subset outside the dimension set");
    if (i_rank >= full_count_ || m_rank >= index_count(alpha))
        throw IndexError("coefficient position out of range");
}

Complex StepOperator::coeff(DimSubset alpha, std::uint64_t i_rank, std::uint64_t m_rank) const {
    check_position(alpha, i_rank, m_rank);
    const auto* arr = term(alpha);
    if (!arr) return Complex{0.0};
    return (*arr)[i_rank * index_count(alpha) + m_rank];
}

void StepOperator::set_coeff(DimSubset alpha, std::uint64_t i_rank, std::uint64_t m_rank, Complex v) {
    check_position(alpha, i_rank, m_rank);
    ensure_term(alpha)[i_rank * index_count(alpha) + m_rank] = v;
}

void StepOperator::add_coeff(DimSubset alpha, std::uint64_t i_rank, std::uint64_t m_rank, Complex v) {
    check_position(alpha, i_rank, m_rank);
    ensure_term(alpha)[i_rank * index_count(alpha) + m_rank] += v;
}

Complex StepOperator::coeff(DimSubset alpha, const MultiIndex& i, const MultiIndex& m) const {
    if (i.support() != DimSubset::full(n_dims_) || m.support() != alpha)
        throw IndexError("multi-index support mismatch");
    return coeff(alpha, index_rank(i, p_), index_rank(m, p_));
}

void StepOperator::set_coeff(DimSubset alpha, const MultiIndex& i, const MultiIndex& m, Complex v) {
    if (i.support() != DimSubset::full(n_dims_) || m.support() != alpha)
        throw IndexError("multi-index support mismatch");
    set_coeff(alpha, index_rank(i, p_), index_rank(m, p_), v);
}

void StepOperator::prune(double tol) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        bool all_small = true;
        for (const Complex& c : it->second)
            if (std::abs(c) > tol) {
                all_small = false;
                break;
            }
        it = all_small ? terms_.erase(it) : std::next(it);
    }
}

StepFunction::StepFunction(int n_dims, int p, int q) : n_dims_(n_dims), p_(p), q_(q) {
    check_sizes(n_dims, p);
    if (q < 1) throw SizeGuardError("refinement q must be >= 1");
    double states = std::pow(static_cast<double>(p) * q, n_dims);
    if (states > static_cast<double>(kMaxStates))
        throw SizeGuardError("(pq)^N exceeds the 2^20 state guard");
    values_.assign(ipow(static_cast<std::uint64_t>(p) * q, n_dims), Complex{0.0});
}

Complex StepFunction::value(const MultiIndex& g) const {
    if (g.support() != DimSubset::full(n_dims_)) throw IndexError("grid index must cover all dimensions");
    return values_[index_rank(g, grid())];
}

void StepFunction::set_value(const MultiIndex& g, Complex v) {
    if (g.support() != DimSubset::full(n_dims_)) throw IndexError("grid index must cover all dimensions");
    values_[index_rank(g, grid())] = v;
}

StepOperator zero_operator(int n_dims, int p) {
    return StepOperator{n_dims, p};
}

StepOperator identity_operator(int n_dims, int p) {
    StepOperator a{n_dims, p};
    auto& arr = a.ensure_term(DimSubset{});
    std::fill(arr.begin(), arr.end(), Complex{1.0});
    return a;
}

StepOperator multiplier_generator(int i, int j, int n_dims, int p) {
    if (i < 1 || i > p) throw IndexError("cell index out of range 1..p");
    if (j < 1 || j > n_dims) throw IndexError("axis out of range 1..n_dims");
    StepOperator a{n_dims, p};
    auto& arr = a.ensure_term(DimSubset{});
    int digits[kMaxDims + 1];
    const DimSubset eta = DimSubset::full(n_dims);
    for (std::uint64_t r = 0; r < a.full_count(); ++r) {
        unrank_digits(eta, r, p, digits);
        if (digits[j] == i) arr[r] = Complex{1.0};
    }
    return a;
}

StepOperator integrator_generator(int i, int j, int n_dims, int p) {
    if (i < 1 || i > p) throw IndexError("cell index out of range 1..p");
    if (j < 1 || j > n_dims) throw IndexError("axis out of range 1..n_dims");
    StepOperator a{n_dims, p};
    const DimSubset axis = DimSubset::of({j});
    auto& arr = a.ensure_term(axis);
    const std::uint64_t mcount = a.index_count(axis);
    for (std::uint64_t r = 0; r < a.full_count(); ++r)
        arr[r * mcount + static_cast<std::uint64_t>(i - 1)] = Complex{1.0};
    return a;
}

StepOperator c_basis_operator(int n_dims, int p, DimSubset alpha, const MultiIndex& i,
                              const MultiIndex& m) {
    StepOperator a{n_dims, p};
    a.set_coeff(alpha, i, m, Complex{1.0});
    return a;
}

StepOperator d_basis_operator(int n_dims, int p, DimSubset alpha, const MultiIndex& i,
                              const MultiIndex& m) {
    if (i.support() != DimSubset::full(n_dims) || m.support() != alpha)
        throw IndexError("multi-index support mismatch");
    StepOperator a{n_dims, p};
    const std::uint64_t i_rank = index_rank(i, p);
    for_each_subset_of(alpha.complement(n_dims), [&](DimSubset gamma) {
        const MultiIndex merged = diamond(m, restrict_to(i, gamma));
        const double sign = (gamma.size() % 2 == 0) ? 1.0 : -1.0;
        a.add_coeff(alpha.unite(gamma), i_rank, index_rank(merged, p), Complex{sign});
    });
    return a;
}

StepOperator add(const StepOperator& a, const StepOperator& b) {
    check_same_shape(a, b);
    StepOperator out = a;
    for (const auto& [beta, arr] : b.terms()) {
        auto& dst = out.ensure_term(beta);
        for (std::size_t k = 0; k < arr.size(); ++k) dst[k] += arr[k];
    }
    return out;
}

StepOperator subtract(const StepOperator& a, const StepOperator& b) {
    return add(a, scale(Complex{-1.0}, b));
}

StepOperator scale(Complex lambda, const StepOperator& a) {
    StepOperator out{a.n_dims(), a.p()};
    for (const auto& [alpha, arr] : a.terms()) {
        auto& dst = out.ensure_term(alpha);
        for (std::size_t k = 0; k < arr.size(); ++k) dst[k] = lambda * arr[k];
    }
    return out;
}

StepOperator compose(const StepOperator& a, const StepOperator& b) {
    check_same_shape(a, b);
    const int n = a.n_dims();
    const int p = a.p();
    const DimSubset eta = DimSubset::full(n);
    StepOperator out{n, p};

    int fi[kMaxDims + 1];  // digits of the full row index i
    int pd[kMaxDims + 1];  // digits of the matched middle index m <> i_{comp(alpha)}
    int md[kMaxDims + 1];  // digits of m over alpha
    int rd[kMaxDims + 1];  // digits of r over beta
    int sd[kMaxDims + 1];  // digits of the merged result column index

    for (const auto& [alpha, arr_a] : a.terms()) {
        const std::uint64_t mcount = a.index_count(alpha);
        for (const auto& [beta, arr_b] : b.terms()) {
            const std::uint64_t rcount = b.index_count(beta);
            const DimSubset gamma = alpha.unite(beta);
            const std::uint64_t scount = out.index_count(gamma);
            auto& arr_out = out.ensure_term(gamma);
            for (std::uint64_t i_rank = 0; i_rank < a.full_count(); ++i_rank) {
                unrank_digits(eta, i_rank, p, fi);
                for (std::uint64_t m_rank = 0; m_rank < mcount; ++m_rank) {
                    const Complex u = arr_a[i_rank * mcount + m_rank];
                    if (u == Complex{0.0}) continue;
                    unrank_digits(alpha, m_rank, p, md);
                    for (int d = 1; d <= n; ++d) pd[d] = alpha.contains(d) ? md[d] : fi[d];
                    const std::uint64_t mid_rank = rank_digits(eta, pd, p);
                    const Complex* row_b = arr_b.data() + mid_rank * rcount;
                    for (std::uint64_t r_rank = 0; r_rank < rcount; ++r_rank) {
                        const Complex v = row_b[r_rank];
                        if (v == Complex{0.0}) continue;
                        unrank_digits(beta, r_rank, p, rd);
                        for (int d = 1; d <= n; ++d)
                            if (gamma.contains(d)) sd[d] = beta.contains(d) ? rd[d] : md[d];
                        arr_out[i_rank * scount + rank_digits(gamma, sd, p)] += u * v;
                    }
                }
            }
        }
    }
    out.prune(0.0);
    return out;
}

StepFunction apply(const StepOperator& a, const StepFunction& u) {
    if (a.n_dims() != u.n_dims() || a.p() != u.p())
        throw ShapeError("operator and function have different (n_dims, p)");
    const int n = a.n_dims();
    const int p = a.p();
    const int q = u.q();
    const int g = u.grid();
    const DimSubset eta = DimSubset::full(n);
    StepFunction out{n, p, q};

    int gd[kMaxDims + 1];  // target grid digits
    int cd[kMaxDims + 1];  // p-cell digits of the target point
    int gs[kMaxDims + 1];  // source grid digits (target with alpha axes replaced)
    int ms[kMaxDims + 1];  // p-cell digits of the replaced axes

    const std::uint64_t total = ipow(static_cast<std::uint64_t>(g), n);
    for (std::uint64_t go = 0; go < total; ++go) {
        unrank_digits(eta, go, g, gd);
        for (int d = 1; d <= n; ++d) cd[d] = (gd[d] - 1) / q + 1;
        const std::uint64_t i_rank = rank_digits(eta, cd, p);
        Complex acc{0.0};
        for (const auto& [alpha, arr] : a.terms()) {
            const std::uint64_t mcount = a.index_count(alpha);
            const double weight = 1.0 / static_cast<double>(ipow(static_cast<std::uint64_t>(q), alpha.size()));
            const std::uint64_t source_total = ipow(static_cast<std::uint64_t>(g), alpha.size());
            for (int d = 1; d <= n; ++d) gs[d] = gd[d];
            for (std::uint64_t t = 0; t < source_total; ++t) {
                unrank_digits(alpha, t, g, gs);
                for (int d : alpha.dims()) ms[d] = (gs[d] - 1) / q + 1;
                const std::uint64_t m_rank = rank_digits(alpha, ms, p);
                acc += weight * arr[i_rank * mcount + m_rank] * u.values()[rank_digits(eta, gs, g)];
            }
        }
        out.values()[go] = acc;
    }
    return out;
}

double max_coeff_difference(const StepOperator& a, const StepOperator& b) {
    check_same_shape(a, b);
    std::set<DimSubset> subsets;
    for (const auto& [alpha, arr] : a.terms()) subsets.insert(alpha);
    for (const auto& [alpha, arr] : b.terms()) subsets.insert(alpha);
    double worst = 0.0;
    for (DimSubset alpha : subsets) {
        const auto* pa = a.term(alpha);
        const auto* pb = b.term(alpha);
        const std::uint64_t len = a.full_count() * a.index_count(alpha);
        for (std::uint64_t k = 0; k < len; ++k) {
            const Complex va = pa ? (*pa)[k] : Complex{0.0};
            const Complex vb = pb ? (*pb)[k] : Complex{0.0};
            worst = std::max(worst, std::abs(va - vb));
        }
    }
    return worst;
}

bool approx_equal(const StepOperator& a, const StepOperator& b, double tol) {
    return max_coeff_difference(a, b) <= tol;
}

namespace {

void check_same_grid(const StepFunction& u, const StepFunction& v) {
    if (u.n_dims() != v.n_dims() || u.p() != v.p() || u.q() != v.q())
        throw ShapeError("functions live on different grids");
}

}  // namespace

StepFunction fn_add(const StepFunction& u, const StepFunction& v) {
    check_same_grid(u, v);
    StepFunction out = u;
    for (std::size_t k = 0; k < out.values().size(); ++k) out.values()[k] += v.values()[k];
    return out;
}

StepFunction fn_subtract(const StepFunction& u, const StepFunction& v) {
    check_same_grid(u, v);
    StepFunction out = u;
    for (std::size_t k = 0; k < out.values().size(); ++k) out.values()[k] -= v.values()[k];
    return out;
}

StepFunction fn_scale(Complex lambda, const StepFunction& u) {
    StepFunction out = u;
    for (Complex& c : out.values()) c *= lambda;
    return out;
}

StepFunction refine(const StepFunction& u, int factor) {
    if (factor < 1) throw SizeGuardError("refinement factor must be >= 1");
    const int n = u.n_dims();
    StepFunction out{n, u.p(), u.q() * factor};
    const DimSubset eta = DimSubset::full(n);
    int fd[kMaxDims + 1];
    int sd[kMaxDims + 1];
    const std::uint64_t total = ipow(static_cast<std::uint64_t>(out.grid()), n);
    for (std::uint64_t r = 0; r < total; ++r) {
        unrank_digits(eta, r, out.grid(), fd);
        for (int d = 1; d <= n; ++d) sd[d] = (fd[d] - 1) / factor + 1;
        out.values()[r] = u.values()[rank_digits(eta, sd, u.grid())];
    }
    return out;
}

double l2_norm(const StepFunction& u) {
    double sum = 0.0;
    for (const Complex& c : u.values()) sum += std::norm(c);
    return std::sqrt(sum / static_cast<double>(u.values().size()));
}

}  // namespace stepop
