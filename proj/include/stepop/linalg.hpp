#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "stepop/errors.hpp"

namespace stepop {

using Complex = std::complex<double>;

/// Dense complex matrix in row-major canonical layout.
using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

/// A pivot below kPivotRel * max|entry| marks the matrix singular; this one
/// threshold is the invertibility notion used everywhere.
inline constexpr double kPivotRel = 1e-12;

inline constexpr int kMaxEigenDim = 4096;

/// LU with partial pivoting plus the singularity verdict.
class LuFactorization {
public:
    explicit LuFactorization(const CMatrix& m);

    [[nodiscard]] bool singular() const { return singular_; }
    [[nodiscard]] double min_pivot() const { return min_pivot_; }

    /// Product of pivots with the permutation sign; near zero when singular.
    [[nodiscard]] Complex determinant() const;

    /// Throws SingularMatrixError when the pivot test failed.
    [[nodiscard]] CVector solve(const CVector& rhs) const;
    [[nodiscard]] CMatrix solve(const CMatrix& rhs) const;
    [[nodiscard]] CMatrix inverse() const;

private:
    Eigen::PartialPivLU<CMatrix> lu_;
    bool singular_ = false;
    double min_pivot_ = 0.0;
};

LuFactorization lu_factor(const CMatrix& m);
CVector solve(const CMatrix& m, const CVector& rhs);
CMatrix inverse(const CMatrix& m);
Complex det(const CMatrix& m);
bool is_singular(const CMatrix& m);

/// All eigenvalues with algebraic multiplicity, sorted by (real, imag)
/// ascending. Throws EigenFailureError on non-convergence.
std::vector<Complex> eigvals(const CMatrix& m);

/// Matrix exponential by scaling and squaring with a diagonal Pade
/// approximant. Throws OverflowError when the result leaves double range.
CMatrix expm(const CMatrix& m);

/// Canonical eigenvalue/1-D value order: (real, imag) ascending.
bool complex_less(const Complex& a, const Complex& b);

}  // namespace stepop
