#pragma once

// Extended-precision complex matrix kernel (internal). Covariances here take
// the form I + sum 2^e_k v_k v_k^H with exponents spanning up to ~240 bits
// (rho up to 2^60, alpha up to 2, products in elimination); double loses the
// identity floor beyond 2^52, so assembly and factorization run in MPFR.

#include <mpfr.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "simocap/complex_matrix.hpp"

namespace simocap::mp {

inline constexpr mpfr_prec_t kPrecision = 320;

class Real {
  public:
    Real() {
        mpfr_init2(v_, kPrecision);
        mpfr_set_zero(v_, 1);
    }
    explicit Real(double d) {
        mpfr_init2(v_, kPrecision);
        mpfr_set_d(v_, d, MPFR_RNDN);
    }
    Real(const Real& o) {
        mpfr_init2(v_, kPrecision);
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, kPrecision);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    Real& operator+=(const Real& o) {
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator-=(const Real& o) {
        mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator*=(const Real& o) {
        mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator/=(const Real& o) {
        mpfr_div(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }

    friend Real operator+(Real a, const Real& b) { return a += b; }
    friend Real operator-(Real a, const Real& b) { return a -= b; }
    friend Real operator*(Real a, const Real& b) { return a *= b; }
    friend Real operator/(Real a, const Real& b) { return a /= b; }

    Real sqrt() const {
        Real r;
        mpfr_sqrt(r.v_, v_, MPFR_RNDN);
        return r;
    }
    double log2_to_double() const {
        Real r;
        mpfr_log2(r.v_, v_, MPFR_RNDN);
        return r.to_double();
    }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    int compare(double d) const { return mpfr_cmp_d(v_, d); }
    bool positive() const { return mpfr_sgn(v_) > 0; }

  private:
    mpfr_t v_;
};

struct Complex {
    Real re, im;

    Complex() = default;
    Complex(double r, double i) : re(r), im(i) {}
    explicit Complex(cplx z) : re(z.real()), im(z.imag()) {}

    Complex conj() const {
        Complex c = *this;
        c.im = Real(0.0) - c.im;
        return c;
    }
    Real norm() const { return re * re + im * im; }

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        Complex c;
        c.re = a.re * b.re - a.im * b.im;
        c.im = a.re * b.im + a.im * b.re;
        return c;
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        const Real d = b.norm();
        Complex c = a * b.conj();
        c.re /= d;
        c.im /= d;
        return c;
    }
    Complex& scale(const Real& s) {
        re *= s;
        im *= s;
        return *this;
    }
};

class Mat {
  public:
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1.0, 0.0);
        return m;
    }
    static Mat from(const ComplexMatrix& src) {
        Mat m(src.rows(), src.cols());
        for (std::size_t i = 0; i < src.rows(); ++i)
            for (std::size_t j = 0; j < src.cols(); ++j) m(i, j) = Complex(src(i, j));
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Complex& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    // += coef * v v^H
    void add_outer(const ComplexVector& v, double coef);

    ComplexMatrix to_double() const;

  private:
    std::size_t rows_, cols_;
    std::vector<Complex> a_;
};

Mat mul(const Mat& a, const Mat& b);
Mat adjoint(const Mat& a);
// a * a^H
Mat aat(const Mat& a);

// Cholesky of a Hermitian positive definite matrix: returns the lower factor;
// throws NonPositiveDefinite when a pivot is <= pivot_floor.
Mat cholesky(const Mat& a, double pivot_floor);
double chol_logdet2(const Mat& l);

// Solve Y L^H = X for Y given lower-triangular L.
Mat solve_right_adjoint(const Mat& x, const Mat& l);

// log2 |det| via LU with partial pivoting; throws Singular below pivot_floor.
double lu_logdet2(Mat a, double pivot_floor);

// X = A^-1 B via LU.
Mat lu_solve(Mat a, Mat b, double pivot_floor);

} // namespace simocap::mp
