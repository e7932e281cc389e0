#include "simocap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mpmat.hpp"
#include "simocap/rates.hpp"

namespace simocap {

namespace {

// X (P^-1 + G^H G)^-1 X^H rewritten as (X P^1/2) C^-1 (X P^1/2)^H with
// C = I + P^1/2 G^H G P^1/2 so zero powers stay finite; returns Y with
// Y Y^H equal to the sandwich (Y = X P^1/2 L^-H, C = L L^H). All in
// extended precision: C mixes scales up to rho^2.
mp::Mat reduced_factor(const ComplexMatrix& x, const ComplexMatrix& g,
                       const std::vector<double>& p) {
    const std::size_t r = p.size();
    std::vector<double> sqrt_p(r);
    for (std::size_t i = 0; i < r; ++i) {
        if (p[i] < 0.0) throw Error("new_outer_bound: negative power");
        sqrt_p[i] = std::sqrt(p[i]);
    }
    mp::Mat gm = mp::Mat::from(g);
    mp::Mat core = mp::adjoint(gm);
    core = mp::mul(core, gm); // G^H G
    // scale rows and columns by sqrt(p), add identity
    mp::Mat c = mp::Mat::identity(r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            mp::Complex t = core(i, j);
            t.scale(mp::Real(sqrt_p[i]));
            t.scale(mp::Real(sqrt_p[j]));
            c(i, j) += t;
        }
    const mp::Mat l = mp::cholesky(c, kPivotFloor);
    mp::Mat xp = mp::Mat::from(x);
    for (std::size_t i = 0; i < xp.rows(); ++i)
        for (std::size_t j = 0; j < r; ++j) xp(i, j).scale(mp::Real(sqrt_p[j]));
    return mp::solve_right_adjoint(xp, l);
}

ComplexMatrix columns_of(const GeneralSimoChannel& ch, std::size_t rx,
                         const std::vector<std::size_t>& txs) {
    std::vector<ComplexVector> cols;
    cols.reserve(txs.size());
    for (std::size_t t : txs) cols.push_back(ch.H[rx][t]);
    return ComplexMatrix::from_columns(cols);
}

std::vector<double> powers_of(const GeneralSimoChannel& ch, const std::vector<std::size_t>& txs) {
    std::vector<double> p;
    p.reserve(txs.size());
    for (std::size_t t : txs) p.push_back(ch.P[t]);
    return p;
}

} // namespace

double single_user_bound(const SymmetricSimoChannel& ch) { return std::log2(1.0 + ch.snr); }

double single_user_bound(const GeneralSimoChannel& ch) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < ch.K; ++j)
        best = std::min(best, std::log2(1.0 + ch.P[j] * ch.H[j][j].norm_sq()));
    return best;
}

double many_to_one_bound(const GeneralSimoChannel& ch, std::size_t interfered) {
    const std::size_t r = interfered;
    OuterSum cross;
    for (std::size_t i = 0; i < ch.K; ++i)
        if (i != r) cross.push_back({ch.H[r][i], ch.P[i]});
    OuterSum with_direct = cross;
    with_direct.push_back({ch.H[r][r], ch.P[r]});
    const double t1 = logdet_id_plus(with_direct, ch.N) - logdet_id_plus(cross, ch.N);

    double t2 = 0.0;
    OuterSum damped;
    for (std::size_t i = 0; i < ch.K; ++i) {
        if (i == r) continue;
        const double gain = ch.P[i] * ch.H[i][i].norm_sq();
        t2 += std::log2(1.0 + gain);
        damped.push_back({ch.H[r][i], ch.P[i] / (1.0 + gain)});
    }
    return t1 + t2 + logdet_id_plus(damped, ch.N);
}

WeightedRateBound new_outer_bound(const GeneralSimoChannel& ch) {
    const std::size_t K = ch.K;
    if (K < 2) throw Error("new_outer_bound: needs K >= 2");
    WeightedRateBound wb;
    wb.weights.assign(K, 2.0);
    wb.weights.front() = wb.weights.back() = 1.0;

    // First and last receiver: direct link damped by the side information
    // carrying its own signal, everything else at full power.
    auto edge_term = [&](std::size_t rx, std::size_t ref_rx) {
        OuterSum terms;
        for (std::size_t i = 0; i < K; ++i)
            if (i != rx) terms.push_back({ch.H[rx][i], ch.P[i]});
        const double damp = 1.0 + ch.H[ref_rx][rx].norm_sq() * ch.P[rx];
        terms.push_back({ch.H[rx][rx], ch.P[rx] / damp});
        return logdet_id_plus(terms, ch.N);
    };
    double value = edge_term(0, K - 1) + edge_term(K - 1, 0);

    for (std::size_t i = 1; i + 1 < K; ++i) {
        std::vector<std::size_t> t1, t2, t3, t4;
        for (std::size_t t = 0; t <= i; ++t) t1.push_back(t);
        for (std::size_t t = i + 1; t < K; ++t) t2.push_back(t);
        t3.push_back(K - 1);
        for (std::size_t t = 1; t <= i; ++t) t3.push_back(t);
        t4.push_back(0);
        for (std::size_t t = i + 1; t + 1 < K; ++t) t4.push_back(t);

        auto family = [&](const std::vector<std::size_t>& ta, std::size_t ref_a,
                          const std::vector<std::size_t>& tb, std::size_t ref_b) {
            const mp::Mat ya =
                reduced_factor(columns_of(ch, i, ta), columns_of(ch, ref_a, ta), powers_of(ch, ta));
            const mp::Mat yb =
                reduced_factor(columns_of(ch, i, tb), columns_of(ch, ref_b, tb), powers_of(ch, tb));
            mp::Mat cov = mp::Mat::identity(ch.N);
            const mp::Mat sa = mp::aat(ya), sb = mp::aat(yb);
            for (std::size_t a = 0; a < ch.N; ++a)
                for (std::size_t b = 0; b < ch.N; ++b) {
                    cov(a, b) += sa(a, b);
                    cov(a, b) += sb(a, b);
                }
            return mp::chol_logdet2(mp::cholesky(cov, kPivotFloor));
        };
        value += family(t1, K - 1, t2, 0);
        value += family(t3, 0, t4, K - 1);
    }
    wb.value = value;
    return wb;
}

double symmetric_new_bound(const SymmetricSimoChannel& ch) {
    const WeightedRateBound wb = new_outer_bound(ch.strong_form());
    double total = 0.0;
    for (double w : wb.weights) total += w;
    return wb.value / total;
}

double two_user_bound(const SymmetricSimoChannel& ch, std::size_t j, std::size_t k) {
    if (j == k) throw Error("two_user_bound: users must differ");
    const double rho = ch.snr, inr = ch.inr();
    const OuterSum terms{{ch.H[j][k], inr}, {ch.H[j][j], rho}};
    return 0.5 * logdet_id_plus(terms, ch.N) + 0.5 * std::log2(1.0 + rho / (1.0 + inr));
}

GeneralSimoChannel two_user_subchannel(const GeneralSimoChannel& ch, std::size_t j,
                                       std::size_t k) {
    GeneralSimoChannel s;
    s.K = 2;
    s.N = ch.N;
    s.normalized_direct = ch.normalized_direct;
    s.P = {ch.P[j], ch.P[k]};
    s.H = {{ch.H[j][j], ch.H[j][k]}, {ch.H[k][j], ch.H[k][k]}};
    return s;
}

double etw_two_user_bound(const SymmetricSimoChannel& ch, std::size_t j, std::size_t k) {
    const GeneralSimoChannel sub = two_user_subchannel(ch.strong_form(), j, k);
    return new_outer_bound(sub).value / 2.0;
}

std::pair<NoiseScales3, Polytope> strong_mac_outer(const GeneralSimoChannel& ch) {
    if (ch.K != 3 || ch.N != 2) throw Error("strong_mac_outer: needs K=3, N=2");
    NoiseScales3 a;
    double* slots[3] = {&a.a1, &a.a2, &a.a3};
    for (std::size_t k = 0; k < 3; ++k) {
        const std::size_t u = (k + 1) % 3, v = (k + 2) % 3;
        const double nu = ch.H[k][u].norm(), nv = ch.H[k][v].norm();
        const double csq = std::norm(correlation(ch, k, u, v));
        *slots[k] = std::min({1.0, std::sqrt(1.0 - csq) * std::max(nu, nv), std::min(nu, nv)});
    }

    Polytope region = Polytope::empty_region(3);
    const double scales[3] = {a.a1, a.a2, a.a3};
    for (std::size_t k = 0; k < 3; ++k) {
        std::vector<Signal> sig(3);
        for (std::size_t i = 0; i < 3; ++i)
            sig[i] = {ch.H[k][i], ch.P[i] / (scales[k] * scales[k])};
        const Polytope r = mac_region(ComplexMatrix::identity(ch.N), sig);
        region.halfspaces.insert(region.halfspaces.end(), r.halfspaces.begin(),
                                 r.halfspaces.end());
    }
    return {a, region};
}

bool corollary_conditions(const GeneralSimoChannel& ch) {
    if (ch.K != 3 || ch.N != 2) throw Error("corollary_conditions: needs K=3, N=2");
    for (std::size_t k = 0; k < 3; ++k) {
        const std::size_t u = (k + 1) % 3, v = (k + 2) % 3;
        const double nu_sq = ch.H[k][u].norm_sq(), nv_sq = ch.H[k][v].norm_sq();
        if (nu_sq <= 0.0 || nv_sq <= 0.0) return false;
        const double csq = std::norm(correlation(ch, k, u, v));
        if (1.0 - csq < std::min(1.0 / nu_sq, 1.0 / nv_sq)) return false;
        if (std::min(nu_sq, nv_sq) < 1.0) return false;
    }
    return true;
}

double outer_symmetric(const SymmetricSimoChannel& ch) {
    const std::size_t K = ch.K();
    double best = single_user_bound(ch);
    for (std::size_t j = 0; j < K; ++j)
        for (std::size_t k = 0; k < K; ++k)
            if (j != k) best = std::min(best, two_user_bound(ch, j, k));

    const GeneralSimoChannel g = ch.strong_form();
    for (std::size_t r = 0; r < K; ++r)
        best = std::min(best, many_to_one_bound(g, r) / static_cast<double>(K));
    best = std::min(best, symmetric_new_bound(ch));
    if (K == 3 && ch.N == 2)
        best = std::min(best, symmetric_point(strong_mac_outer(g).second));
    return best;
}

} // namespace simocap
