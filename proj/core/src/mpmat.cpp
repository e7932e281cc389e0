#include "mpmat.hpp"

#include <cmath>

namespace simocap::mp {

void Mat::add_outer(const ComplexVector& v, double coef) {
    if (coef == 0.0) return;
    const Real c(coef);
    for (std::size_t i = 0; i < rows_; ++i) {
        const Complex vi(v[i]);
        for (std::size_t j = 0; j < cols_; ++j) {
            Complex t = vi * Complex(v[j]).conj();
            t.scale(c);
            (*this)(i, j) += t;
        }
    }
}

ComplexMatrix Mat::to_double() const {
    ComplexMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(i, j) = cplx((*this)(i, j).re.to_double(), (*this)(i, j).im.to_double());
    return m;
}

Mat mul(const Mat& a, const Mat& b) {
    Mat m(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += a(i, k) * b(k, j);
    return m;
}

Mat adjoint(const Mat& a) {
    Mat m(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(j, i) = a(i, j).conj();
    return m;
}

Mat aat(const Mat& a) {
    Mat m(a.rows(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.rows(); ++j)
            for (std::size_t k = 0; k < a.cols(); ++k) m(i, j) += a(i, k) * a(j, k).conj();
    return m;
}

Mat cholesky(const Mat& a, double pivot_floor) {
    const std::size_t n = a.rows();
    Mat l(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        Real d = a(k, k).re;
        for (std::size_t j = 0; j < k; ++j) d -= l(k, j).norm();
        if (!d.positive() || d.compare(pivot_floor) <= 0)
            throw NonPositiveDefinite("cholesky: pivot below tolerance");
        const Real root = d.sqrt();
        l(k, k) = Complex(0.0, 0.0);
        l(k, k).re = root;
        for (std::size_t i = k + 1; i < n; ++i) {
            Complex s = a(i, k);
            for (std::size_t j = 0; j < k; ++j) s -= l(i, j) * l(k, j).conj();
            s.re /= root;
            s.im /= root;
            l(i, k) = s;
        }
    }
    return l;
}

double chol_logdet2(const Mat& l) {
    double sum = 0.0;
    for (std::size_t i = 0; i < l.rows(); ++i) sum += 2.0 * l(i, i).re.log2_to_double();
    return sum;
}

Mat solve_right_adjoint(const Mat& x, const Mat& l) {
    // Y U = X with U = L^H upper triangular: u(i, j) = conj(l(j, i)).
    const std::size_t n = l.rows(), m = x.rows();
    Mat y(m, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t r = 0; r < m; ++r) {
            Complex s = x(r, j);
            for (std::size_t k = 0; k < j; ++k) s -= y(r, k) * l(j, k).conj();
            y(r, j) = s / l(j, j).conj();
        }
    }
    return y;
}

namespace {

// |re| + |im| dominance proxy for pivot choice; exact magnitude not needed.
Real abs_proxy(const Complex& z) { return z.norm(); }

} // namespace

double lu_logdet2(Mat a, double pivot_floor) {
    const std::size_t n = a.rows();
    double logdet = 0.0;
    std::vector<std::size_t> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        Real best = abs_proxy(a(rows[k], k));
        for (std::size_t i = k + 1; i < n; ++i) {
            Real v = abs_proxy(a(rows[i], k));
            if ((v - best).positive()) {
                best = v;
                piv = i;
            }
        }
        std::swap(rows[k], rows[piv]);
        const Real mag = best.sqrt();
        if (mag.compare(pivot_floor) <= 0) throw Singular("lu: pivot below tolerance");
        logdet += mag.log2_to_double();
        const Complex& pivot = a(rows[k], k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex f = a(rows[i], k) / pivot;
            a(rows[i], k) = f;
            for (std::size_t j = k + 1; j < n; ++j) {
                Complex t = f * a(rows[k], j);
                a(rows[i], j) -= t;
            }
        }
    }
    return logdet;
}

Mat lu_solve(Mat a, Mat b, double pivot_floor) {
    const std::size_t n = a.rows(), m = b.cols();
    std::vector<std::size_t> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        Real best = abs_proxy(a(rows[k], k));
        for (std::size_t i = k + 1; i < n; ++i) {
            Real v = abs_proxy(a(rows[i], k));
            if ((v - best).positive()) {
                best = v;
                piv = i;
            }
        }
        std::swap(rows[k], rows[piv]);
        if (best.sqrt().compare(pivot_floor) <= 0) throw Singular("lu_solve: pivot below tolerance");
        const Complex& pivot = a(rows[k], k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex f = a(rows[i], k) / pivot;
            a(rows[i], k) = f;
            for (std::size_t j = k + 1; j < n; ++j) {
                Complex t = f * a(rows[k], j);
                a(rows[i], j) -= t;
            }
            for (std::size_t j = 0; j < m; ++j) {
                Complex t = f * b(rows[k], j);
                b(rows[i], j) -= t;
            }
        }
    }
    Mat x(n, m);
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t ii = n; ii-- > 0;) {
            Complex s = b(rows[ii], c);
            for (std::size_t j = ii + 1; j < n; ++j) s -= a(rows[ii], j) * x(j, c);
            x(ii, c) = s / a(rows[ii], ii);
        }
    }
    return x;
}

} // namespace simocap::mp
