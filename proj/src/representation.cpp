#include "stepop/representation.hpp"

#include <algorithm>
#include <string>

namespace stepop {

namespace {

std::string block_name(DimSubset alpha, std::uint64_t i_rank) {
    std::string s = "alpha={";
    bool first = true;
    for (int d : alpha.dims()) {
        if (!first) s += ',';
        s += std::to_string(d);
        first = false;
    }
    s += "}, index rank " + std::to_string(i_rank);
    return s;
}

void check_same_shape(const Representation& r, const Representation& s) {
    if (r.n_dims() != s.n_dims() || r.p() != s.p())
        throw ShapeError("representations have different (n_dims, p)");
}

}  // namespace

BlockLayout::BlockLayout(int n_dims, int p) : n_dims_(n_dims), p_(p) {
    subsets_ = enumerate_subsets(n_dims);
    offsets_.reserve(subsets_.size());
    std::size_t off = 0;
    for (DimSubset alpha : subsets_) {
        offsets_.push_back(off);
        off += outer_count(alpha);
    }
    total_ = off;
}

std::uint64_t BlockLayout::outer_count(DimSubset alpha) const {
    return ipow(static_cast<std::uint64_t>(p_), n_dims_ - alpha.size());
}

std::uint64_t BlockLayout::block_dim(DimSubset alpha) const {
    return ipow(static_cast<std::uint64_t>(p_), alpha.size());
}

std::size_t BlockLayout::position(DimSubset alpha, std::uint64_t i_rank) const {
    auto it = std::lower_bound(subsets_.begin(), subsets_.end(), alpha);
    if (it == subsets_.end() || *it != alpha) throw IndexError("subset outside the dimension set");
    if (i_rank >= outer_count(alpha)) throw IndexError("outer index rank out of range");
    return offsets_[static_cast<std::size_t>(it - subsets_.begin())] + i_rank;
}

Representation::Representation(int n_dims, int p) : layout_(n_dims, p) {
    blocks_.reserve(layout_.total_positions());
    layout_.for_each([&](DimSubset alpha, std::uint64_t, std::size_t) {
        const auto d = static_cast<Eigen::Index>(layout_.block_dim(alpha));
        blocks_.push_back(CMatrix::Zero(d, d));
    });
}

const CMatrix& Representation::block(DimSubset alpha, std::uint64_t i_rank) const {
    return blocks_[layout_.position(alpha, i_rank)];
}

CMatrix& Representation::block(DimSubset alpha, std::uint64_t i_rank) {
    return blocks_[layout_.position(alpha, i_rank)];
}

Representation sigma(const StepOperator& a) {
    const int n = a.n_dims();
    const int p = a.p();
    const DimSubset eta = DimSubset::full(n);
    Representation rep{n, p};

    int fd[kMaxDims + 1];  // digits of the full row index i <> m
    int nd[kMaxDims + 1];  // digits of the column index n over alpha

    rep.layout().for_each([&](DimSubset alpha, std::uint64_t i_rank, std::size_t) {
        const DimSubset abar = alpha.complement(n);
        CMatrix& blk = rep.block(alpha, i_rank);
        const std::uint64_t dim = rep.layout().block_dim(alpha);
        unrank_digits(abar, i_rank, p, fd);
        for (std::uint64_t m_rank = 0; m_rank < dim; ++m_rank) {
            unrank_digits(alpha, m_rank, p, fd);  // fd now holds i <> m
            const std::uint64_t full_rank = rank_digits(eta, fd, p);
            for (std::uint64_t n_rank = 0; n_rank < dim; ++n_rank) {
                unrank_digits(alpha, n_rank, p, nd);
                Complex b{0.0};
                for (const auto& [beta, arr] : a.terms()) {
                    if (!alpha.contains_all(beta)) continue;
                    bool agree = true;
                    for (int d : alpha.minus(beta).dims())
                        if (fd[d] != nd[d]) {
                            agree = false;
                            break;
                        }
                    if (!agree) continue;
                    const std::uint64_t mb = rank_digits(beta, nd, p);
                    b += arr[full_rank * a.index_count(beta) + mb];
                }
                blk(static_cast<Eigen::Index>(m_rank), static_cast<Eigen::Index>(n_rank)) = b;
            }
        }
    });
    return rep;
}

StepOperator sigma_inverse(const Representation& r) {
    const int n = r.n_dims();
    const int p = r.p();
    const DimSubset eta = DimSubset::full(n);
    StepOperator a{n, p};

    int fd[kMaxDims + 1];  // digits of the full row index
    int md[kMaxDims + 1];  // digits of the column index m over alpha

    for (DimSubset alpha : r.layout().subsets()) {
        const std::uint64_t mcount = ipow(static_cast<std::uint64_t>(p), alpha.size());
        auto& arr = a.ensure_term(alpha);
        for (std::uint64_t full_rank = 0; full_rank < a.full_count(); ++full_rank) {
            unrank_digits(eta, full_rank, p, fd);
            for (std::uint64_t m_rank = 0; m_rank < mcount; ++m_rank) {
                unrank_digits(alpha, m_rank, p, md);
                Complex v{0.0};
                for_each_subset_of(alpha, [&](DimSubset beta) {
                    for (int d : alpha.minus(beta).dims())
                        if (fd[d] != md[d]) return;
                    const double sign = (alpha.minus(beta).size() % 2 == 0) ? 1.0 : -1.0;
                    const std::uint64_t outer = rank_digits(beta.complement(n), fd, p);
                    const std::uint64_t row = rank_digits(beta, fd, p);
                    const std::uint64_t col = rank_digits(beta, md, p);
                    v += sign * r.block(beta, outer)(static_cast<Eigen::Index>(row),
                                                     static_cast<Eigen::Index>(col));
                });
                arr[full_rank * mcount + m_rank] = v;
            }
        }
    }
    return a;
}

Representation rep_add(const Representation& r, const Representation& s) {
    check_same_shape(r, s);
    Representation out = r;
    out.layout().for_each([&](DimSubset alpha, std::uint64_t i, std::size_t) {
        out.block(alpha, i) += s.block(alpha, i);
    });
    return out;
}

Representation rep_scale(Complex lambda, const Representation& r) {
    Representation out = r;
    out.layout().for_each([&](DimSubset alpha, std::uint64_t i, std::size_t) {
        out.block(alpha, i) *= lambda;
    });
    return out;
}

Representation rep_multiply(const Representation& r, const Representation& s) {
    check_same_shape(r, s);
    Representation out{r.n_dims(), r.p()};
    out.layout().for_each([&](DimSubset alpha, std::uint64_t i, std::size_t) {
        out.block(alpha, i) = r.block(alpha, i) * s.block(alpha, i);
    });
    return out;
}

Representation rep_inverse(const Representation& r) {
    Representation out{r.n_dims(), r.p()};
    out.layout().for_each([&](DimSubset alpha, std::uint64_t i, std::size_t) {
        LuFactorization lu{r.block(alpha, i)};
        if (lu.singular())
            throw SingularBlockError(alpha.bits(), i, "singular block at " + block_name(alpha, i));
        out.block(alpha, i) = lu.inverse();
    });
    return out;
}

StepOperator operator_invert(const StepOperator& a) {
    return sigma_inverse(rep_inverse(sigma(a)));
}

StepFunction operator_solve(const StepOperator& a, const StepFunction& f) {
    return apply(operator_invert(a), f);
}

StepOperator operator_exp(const StepOperator& a) {
    Representation r = sigma(a);
    Representation e{r.n_dims(), r.p()};
    e.layout().for_each([&](DimSubset alpha, std::uint64_t i, std::size_t) {
        e.block(alpha, i) = expm(r.block(alpha, i));
    });
    return sigma_inverse(e);
}

double max_block_difference(const Representation& r, const Representation& s) {
    check_same_shape(r, s);
    double worst = 0.0;
    r.layout().for_each([&](DimSubset alpha, std::uint64_t i, std::size_t) {
        const double d = (r.block(alpha, i) - s.block(alpha, i)).cwiseAbs().maxCoeff();
        worst = std::max(worst, d);
    });
    return worst;
}

}  // namespace stepop
