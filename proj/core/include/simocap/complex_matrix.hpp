#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "simocap/errors.hpp"

namespace simocap {

using cplx = std::complex<double>;

// Tolerances of the numeric kernel. Matrices here are small (<= ~8x8)
// covariance-type matrices, so absolute thresholds are appropriate.
inline constexpr double kPivotFloor = 1e-14;
inline constexpr double kHermitianTol = 1e-12;

class ComplexVector {
  public:
    ComplexVector() = default;
    explicit ComplexVector(std::size_t n) : v_(n) {}
    ComplexVector(std::initializer_list<cplx> init) : v_(init) {}

    std::size_t size() const { return v_.size(); }
    cplx& operator[](std::size_t i) { return v_[i]; }
    const cplx& operator[](std::size_t i) const { return v_[i]; }

    double norm() const;
    double norm_sq() const;
    bool finite() const;

    ComplexVector& operator*=(cplx s);
    ComplexVector operator*(cplx s) const;
    ComplexVector operator-(const ComplexVector& o) const;
    ComplexVector operator+(const ComplexVector& o) const;

    const std::vector<cplx>& data() const { return v_; }
    std::vector<cplx>& data() { return v_; }

  private:
    std::vector<cplx> v_;
};

// u^H v
cplx inner(const ComplexVector& u, const ComplexVector& v);

class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);
    // v w^H
    static ComplexMatrix outer(const ComplexVector& v, const ComplexVector& w);
    // Columns side by side; all must share the same length.
    static ComplexMatrix from_columns(const std::vector<ComplexVector>& cols);
    static ComplexMatrix diag(const std::vector<double>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    ComplexMatrix adjoint() const;
    ComplexMatrix operator+(const ComplexMatrix& o) const;
    ComplexMatrix operator-(const ComplexMatrix& o) const;
    ComplexMatrix operator*(const ComplexMatrix& o) const;
    ComplexMatrix operator*(cplx s) const;
    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexVector operator*(const ComplexVector& v) const;

    double max_abs() const;
    bool finite() const;
    // max_ij |M - M^H|
    double hermitian_defect() const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

// log2 det(M) for Hermitian positive definite M, via Cholesky after
// symmetrizing (M + M^H)/2. Throws NotHermitian when the defect exceeds
// kHermitianTol * max_abs, NonPositiveDefinite when a pivot is <= kPivotFloor.
// Factorization runs in extended precision: the covariances here mix scales
// up to 2^240, past what double pivots can resolve.
double logdet_hermitian(const ComplexMatrix& m);

// One rank-one component coef * v v^H of a Gaussian covariance.
struct OuterTerm {
    ComplexVector v;
    double coef = 1.0;
};
using OuterSum = std::vector<OuterTerm>;

// log2 det(I_dim + sum coef v v^H), assembled and factored in extended
// precision so the identity floor survives arbitrarily large coefficients.
double logdet_id_plus(const OuterSum& terms, std::size_t dim);

// log2 det(base + sum coef v v^H); base Hermitian PD as given.
double logdet_plus_outers(const ComplexMatrix& base, const OuterSum& terms);

// log2 |det(M)| for a general square matrix, via LU with partial pivoting.
// Throws Singular when a pivot falls below kPivotFloor.
double logdet_lu(const ComplexMatrix& m);

// Solve M X = B. LU with partial pivoting, pivot floor kPivotFloor.
ComplexMatrix solve(const ComplexMatrix& m, const ComplexMatrix& b);
ComplexMatrix inverse(const ComplexMatrix& m);

// A^-1 - A^-1 B (C^-1 + D A^-1 B)^-1 D A^-1, the inverse of A + B C D.
ComplexMatrix woodbury_inverse(const ComplexMatrix& a, const ComplexMatrix& b,
                               const ComplexMatrix& c, const ComplexMatrix& d);

struct Projection {
    double gain = 0.0;       // norm of the residual
    ComplexVector residual;  // component of x orthogonal to u
};

// Remove from x its component along u. Throws ZeroDirection for ||u|| = 0.
Projection project_out(const ComplexVector& x, const ComplexVector& u);

// Factor a PSD matrix G as V V^H with V of shape n x rank, via
// diagonally-pivoted Cholesky. `tol` decides when a pivot counts as zero.
// Throws NotPSD when a pivot is negative beyond tolerance or the residual
// after rank exhaustion is nonzero.
struct PsdFactor {
    ComplexMatrix v; // n x rank
    std::size_t rank = 0;
};
PsdFactor psd_factor(const ComplexMatrix& g, double tol = 1e-9);

} // namespace simocap
