#include "simocap/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "mpmat.hpp"

namespace simocap {

double ComplexVector::norm_sq() const {
    double s = 0.0;
    for (const auto& z : v_) s += std::norm(z);
    return s;
}

double ComplexVector::norm() const { return std::sqrt(norm_sq()); }

bool ComplexVector::finite() const {
    for (const auto& z : v_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

ComplexVector& ComplexVector::operator*=(cplx s) {
    for (auto& z : v_) z *= s;
    return *this;
}

ComplexVector ComplexVector::operator*(cplx s) const {
    ComplexVector r = *this;
    r *= s;
    return r;
}

ComplexVector ComplexVector::operator-(const ComplexVector& o) const {
    ComplexVector r = *this;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= o[i];
    return r;
}

ComplexVector ComplexVector::operator+(const ComplexVector& o) const {
    ComplexVector r = *this;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += o[i];
    return r;
}

cplx inner(const ComplexVector& u, const ComplexVector& v) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::outer(const ComplexVector& v, const ComplexVector& w) {
    ComplexMatrix m(v.size(), w.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * std::conj(w[j]);
    return m;
}

ComplexMatrix ComplexMatrix::from_columns(const std::vector<ComplexVector>& cols) {
    if (cols.empty()) return {};
    ComplexMatrix m(cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = cols[j][i];
    return m;
}

ComplexMatrix ComplexMatrix::diag(const std::vector<double>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
    ComplexMatrix m = *this;
    m += o;
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
    ComplexMatrix m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
    return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
    ComplexMatrix m(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const cplx aik = (*this)(i, k);
            if (aik == cplx(0.0)) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) m(i, j) += aik * o(k, j);
        }
    return m;
}

ComplexMatrix ComplexMatrix::operator*(cplx s) const {
    ComplexMatrix m = *this;
    for (auto& z : m.a_) z *= s;
    return m;
}

ComplexVector ComplexMatrix::operator*(const ComplexVector& v) const {
    ComplexVector r(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : a_) m = std::max(m, std::abs(z));
    return m;
}

bool ComplexMatrix::finite() const {
    for (const auto& z : a_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

double ComplexMatrix::hermitian_defect() const {
    double d = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
}

namespace {

// In-place LU with partial pivoting; returns log2|det| and the sign count.
double lu_logdet_and_factor(ComplexMatrix& m, std::vector<std::size_t>& perm) {
    const std::size_t n = m.rows();
    perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    double logdet = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(m(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(m(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best <= kPivotFloor) throw Singular("LU pivot below tolerance");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            std::swap(perm[k], perm[piv]);
        }
        logdet += std::log2(std::abs(m(k, k)));
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = m(i, k) / m(k, k);
            m(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return logdet;
}

ComplexMatrix symmetrized(const ComplexMatrix& m) {
    ComplexMatrix s(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            s(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return s;
}

} // namespace

double logdet_hermitian(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw Error("logdet_hermitian: matrix not square");
    if (!m.finite()) throw Error("logdet_hermitian: non-finite entries");
    if (m.hermitian_defect() > kHermitianTol * std::max(1.0, m.max_abs()))
        throw NotHermitian("logdet_hermitian: Hermitian defect exceeds tolerance");

    // Covariances assembled from sums of outer products accumulate roundoff
    // in the off-diagonal conjugate pairs; symmetrize before factoring.
    return mp::chol_logdet2(mp::cholesky(mp::Mat::from(symmetrized(m)), kPivotFloor));
}

double logdet_id_plus(const OuterSum& terms, std::size_t dim) {
    mp::Mat a = mp::Mat::identity(dim);
    for (const auto& t : terms) {
        if (t.v.size() != dim) throw Error("logdet_id_plus: vector length mismatch");
        if (t.coef < 0.0) throw Error("logdet_id_plus: negative coefficient");
        a.add_outer(t.v, t.coef);
    }
    return mp::chol_logdet2(mp::cholesky(a, kPivotFloor));
}

double logdet_plus_outers(const ComplexMatrix& base, const OuterSum& terms) {
    if (base.hermitian_defect() > kHermitianTol * std::max(1.0, base.max_abs()))
        throw NotHermitian("logdet_plus_outers: base not Hermitian");
    mp::Mat a = mp::Mat::from(symmetrized(base));
    for (const auto& t : terms) a.add_outer(t.v, t.coef);
    return mp::chol_logdet2(mp::cholesky(a, kPivotFloor));
}

double logdet_lu(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw Error("logdet_lu: matrix not square");
    return mp::lu_logdet2(mp::Mat::from(m), kPivotFloor);
}

ComplexMatrix solve(const ComplexMatrix& m, const ComplexMatrix& b) {
    if (m.rows() != m.cols() || m.rows() != b.rows()) throw Error("solve: shape mismatch");
    ComplexMatrix lu = m;
    std::vector<std::size_t> perm;
    lu_logdet_and_factor(lu, perm);
    const std::size_t n = m.rows(), k = b.cols();
    ComplexMatrix x(n, k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) x(i, j) = b(perm[i], j);
    // forward substitution (unit lower triangle)
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t i = 1; i < n; ++i) {
            cplx s = x(i, c);
            for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * x(j, c);
            x(i, c) = s;
        }
        for (std::size_t ii = n; ii-- > 0;) {
            cplx s = x(ii, c);
            for (std::size_t j = ii + 1; j < n; ++j) s -= lu(ii, j) * x(j, c);
            x(ii, c) = s / lu(ii, ii);
        }
    }
    return x;
}

ComplexMatrix inverse(const ComplexMatrix& m) {
    return solve(m, ComplexMatrix::identity(m.rows()));
}

ComplexMatrix woodbury_inverse(const ComplexMatrix& a, const ComplexMatrix& b,
                               const ComplexMatrix& c, const ComplexMatrix& d) {
    const ComplexMatrix ainv = inverse(a);
    if (b.cols() == 0) return ainv;
    const ComplexMatrix cinv = inverse(c);
    const ComplexMatrix da_inv = d * ainv;
    const ComplexMatrix core = cinv + da_inv * b;
    const ComplexMatrix mid = solve(core, da_inv);
    return ainv - ainv * b * mid;
}

Projection project_out(const ComplexVector& x, const ComplexVector& u) {
    const double un = u.norm_sq();
    if (un <= 0.0) throw ZeroDirection("project_out: zero direction");
    const cplx coef = inner(u, x) / un;
    Projection p;
    p.residual = x - u * coef;
    p.gain = p.residual.norm();
    return p;
}

PsdFactor psd_factor(const ComplexMatrix& g, double tol) {
    if (g.rows() != g.cols()) throw NotPSD("psd_factor: matrix not square");
    if (g.hermitian_defect() > kHermitianTol * std::max(1.0, g.max_abs()))
        throw NotPSD("psd_factor: matrix not Hermitian");
    const std::size_t n = g.rows();
    ComplexMatrix a = symmetrized(g);
    ComplexMatrix l(n, n);
    std::vector<std::size_t> order;

    for (std::size_t step = 0; step < n; ++step) {
        // largest remaining diagonal
        std::size_t piv = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::find(order.begin(), order.end(), i) != order.end()) continue;
            const double d = a(i, i).real();
            if (d > best) {
                best = d;
                piv = i;
            }
        }
        if (best < -tol) throw NotPSD("psd_factor: negative pivot");
        if (best <= tol) break;
        order.push_back(piv);
        const std::size_t r = order.size() - 1;
        const double lkk = std::sqrt(best);
        l(piv, r) = lkk;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == piv || std::find(order.begin(), order.end(), i) != order.end()) continue;
            cplx s = a(i, piv);
            for (std::size_t j = 0; j < r; ++j) s -= l(i, j) * std::conj(l(piv, j));
            l(i, r) = s / lkk;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (std::find(order.begin(), order.end(), i) != order.end()) continue;
            a(i, i) -= std::norm(l(i, r));
        }
    }

    const std::size_t rank = order.size();
    // Residual check: G must equal L L^H on the skipped block too.
    ComplexMatrix v(n, rank);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < rank; ++j) v(i, j) = l(i, j);
    const ComplexMatrix res = symmetrized(g) - v * v.adjoint();
    if (res.max_abs() > std::max(1.0, g.max_abs()) * 1e-8)
        throw NotPSD("psd_factor: residual after rank exhaustion");

    PsdFactor f;
    f.v = std::move(v);
    f.rank = rank;
    return f;
}

} // namespace simocap
