#pragma once

#include <map>
#include <vector>

#include "stepop/indexing.hpp"
#include "stepop/linalg.hpp"

namespace stepop {

/// Element of the mixed integral-operator algebra in the product basis:
/// one coefficient family per dimension subset alpha, shaped p^N x p^|alpha|
/// and indexed (rank(i), rank(m)) with i over the full dimension set and m
/// over alpha. An absent subset is the zero family. Immutable by convention
/// once built; all algebra operations are pure functions.
class StepOperator {
public:
    StepOperator(int n_dims, int p);

    [[nodiscard]] int n_dims() const { return n_dims_; }
    [[nodiscard]] int p() const { return p_; }

    /// p^N, the number of full multi-indices.
    [[nodiscard]] std::uint64_t full_count() const { return full_count_; }
    [[nodiscard]] std::uint64_t index_count(DimSubset alpha) const {
        return ipow(static_cast<std::uint64_t>(p_), alpha.size());
    }

    [[nodiscard]] bool has_term(DimSubset alpha) const { return terms_.count(alpha) > 0; }

    /// Coefficient array for alpha, or nullptr when the family is zero.
    [[nodiscard]] const std::vector<Complex>* term(DimSubset alpha) const;

    /// Array for alpha, zero-filled on first use.
    std::vector<Complex>& ensure_term(DimSubset alpha);

    [[nodiscard]] Complex coeff(DimSubset alpha, std::uint64_t i_rank, std::uint64_t m_rank) const;
    void set_coeff(DimSubset alpha, std::uint64_t i_rank, std::uint64_t m_rank, Complex v);
    void add_coeff(DimSubset alpha, std::uint64_t i_rank, std::uint64_t m_rank, Complex v);

    [[nodiscard]] Complex coeff(DimSubset alpha, const MultiIndex& i, const MultiIndex& m) const;
    void set_coeff(DimSubset alpha, const MultiIndex& i, const MultiIndex& m, Complex v);

    /// Terms keyed in canonical subset order.
    [[nodiscard]] const std::map<DimSubset, std::vector<Complex>>& terms() const { return terms_; }

    /// Drop terms whose every coefficient has magnitude <= tol.
    void prune(double tol = 0.0);

private:
    void check_position(DimSubset alpha, std::uint64_t i_rank, std::uint64_t m_rank) const;

    int n_dims_;
    int p_;
    std::uint64_t full_count_;
    std::map<DimSubset, std::vector<Complex>> terms_;
};

/// Complex-valued function constant on the uniform (p*q)^N grid over
/// [0,1)^N; values indexed by the rank of the grid multi-index (radix p*q).
class StepFunction {
public:
    StepFunction(int n_dims, int p, int q);

    [[nodiscard]] int n_dims() const { return n_dims_; }
    [[nodiscard]] int p() const { return p_; }
    [[nodiscard]] int q() const { return q_; }
    [[nodiscard]] int grid() const { return p_ * q_; }

    [[nodiscard]] const std::vector<Complex>& values() const { return values_; }
    std::vector<Complex>& values() { return values_; }

    [[nodiscard]] Complex value(const MultiIndex& g) const;
    void set_value(const MultiIndex& g, Complex v);

private:
    int n_dims_;
    int p_;
    int q_;
    std::vector<Complex> values_;
};

StepOperator zero_operator(int n_dims, int p);

/// a_empty(i) = 1 for every i; the unit of the algebra.
StepOperator identity_operator(int n_dims, int p);

/// Multiplication by the indicator of cell i along axis j.
StepOperator multiplier_generator(int i, int j, int n_dims, int p);

/// p * integral over cell i of axis j (the mean over cell i, as an operator
/// constant in k_j).
StepOperator integrator_generator(int i, int j, int n_dims, int p);

/// Single-term product-basis element: coefficient 1 at (alpha, i, m).
StepOperator c_basis_operator(int n_dims, int p, DimSubset alpha, const MultiIndex& i,
                              const MultiIndex& m);

/// Orthogonal-basis element, realized as the signed combination
/// sum_{beta >= alpha} (-1)^|beta \ alpha| C_beta(i, m <> i_{beta \ alpha}).
StepOperator d_basis_operator(int n_dims, int p, DimSubset alpha, const MultiIndex& i,
                              const MultiIndex& m);

StepOperator add(const StepOperator& a, const StepOperator& b);
StepOperator subtract(const StepOperator& a, const StepOperator& b);
StepOperator scale(Complex lambda, const StepOperator& a);

/// Operator composition, apply b first then a. Direct product-basis rule:
/// C_a(i,m) C_b(p,r) = [p == m <> i_{comp(a)}] C_{a|b}(i, m_{a\b} <> r).
StepOperator compose(const StepOperator& a, const StepOperator& b);

/// Exact action on a (p*q)^N-grid step function; the grid subspace is
/// invariant, so this equals the L2 operator action with no discretization
/// error.
StepFunction apply(const StepOperator& a, const StepFunction& u);

/// Max over all subsets and positions of |a - b| (absent terms read as 0).
double max_coeff_difference(const StepOperator& a, const StepOperator& b);
bool approx_equal(const StepOperator& a, const StepOperator& b, double tol = 1e-12);

StepFunction fn_add(const StepFunction& u, const StepFunction& v);
StepFunction fn_subtract(const StepFunction& u, const StepFunction& v);
StepFunction fn_scale(Complex lambda, const StepFunction& u);

/// Same function on the (p*q*factor)^N grid, values repeated blockwise.
StepFunction refine(const StepFunction& u, int factor);

/// L2([0,1)^N) norm: sqrt(sum |v_g|^2 / (pq)^N).
double l2_norm(const StepFunction& u);

}  // namespace stepop
