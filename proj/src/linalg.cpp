#include "stepop/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace stepop {

bool complex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

LuFactorization::LuFactorization(const CMatrix& m) : lu_(m) {
    if (m.rows() != m.cols() || m.rows() < 1) throw ShapeError("LU requires a square matrix, d >= 1");
    const double max_abs = m.cwiseAbs().maxCoeff();
    min_pivot_ = lu_.matrixLU().diagonal().cwiseAbs().minCoeff();
    singular_ = (max_abs == 0.0) || (min_pivot_ < kPivotRel * max_abs);
}

Complex LuFactorization::determinant() const {
    return lu_.determinant();
}

CVector LuFactorization::solve(const CVector& rhs) const {
    if (singular_) throw SingularMatrixError("solve on a singular matrix");
    return lu_.solve(rhs);
}

CMatrix LuFactorization::solve(const CMatrix& rhs) const {
    if (singular_) throw SingularMatrixError("solve on a singular matrix");
    return lu_.solve(rhs);
}

CMatrix LuFactorization::inverse() const {
    if (singular_) throw SingularMatrixError("inverse of a singular matrix");
    return lu_.inverse();
}

LuFactorization lu_factor(const CMatrix& m) {
    return LuFactorization{m};
}

CVector solve(const CMatrix& m, const CVector& rhs) {
    return LuFactorization{m}.solve(rhs);
}

CMatrix inverse(const CMatrix& m) {
    return LuFactorization{m}.inverse();
}

Complex det(const CMatrix& m) {
    return LuFactorization{m}.determinant();
}

bool is_singular(const CMatrix& m) {
    return LuFactorization{m}.singular();
}

std::vector<Complex> eigvals(const CMatrix& m) {
    if (m.rows() != m.cols()) throw ShapeError("eigvals requires a square matrix");
    if (m.rows() > kMaxEigenDim) throw SizeGuardError("eigvals dimension above 4096");
    Eigen::ComplexEigenSolver<CMatrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw EigenFailureError("eigenvalue iteration did not converge");
    std::vector<Complex> vals(solver.eigenvalues().data(), solver.eigenvalues().data() + m.rows());
    std::sort(vals.begin(), vals.end(), complex_less);
    return vals;
}

// Scaling and squaring with the diagonal [6/6] Pade approximant: scale so
// that ||A/2^s||_inf <= 1/2, form N(A)/D(A), square s times.
CMatrix expm(const CMatrix& m) {
    if (m.rows() != m.cols()) throw ShapeError("expm requires a square matrix");
    const auto d = m.rows();
    const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
    if (!std::isfinite(norm) || norm > 1e8) throw OverflowError("expm input norm out of range");

    int s = 0;
    if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm))) + 1;

    const CMatrix a = m / std::pow(2.0, s);
    const CMatrix id = CMatrix::Identity(d, d);

    constexpr int q = 6;
    CMatrix power = a;
    CMatrix num = id + 0.5 * a;
    CMatrix den = id - 0.5 * a;
    double c = 0.5;
    for (int k = 2; k <= q; ++k) {
        c *= static_cast<double>(q - k + 1) / static_cast<double>(k * (2 * q - k + 1));
        power = (a * power).eval();
        num += c * power;
        den += ((k % 2 == 0) ? c : -c) * power;
    }

    CMatrix f = LuFactorization{den}.solve(num);
    for (int k = 0; k < s; ++k) f = (f * f).eval();
    if (!f.allFinite()) throw OverflowError("expm overflowed double range");
    return f;
}

}  // namespace stepop
