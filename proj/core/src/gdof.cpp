#include "simocap/gdof.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "mpmat.hpp"
#include "simocap/bounds.hpp"
#include "simocap/rates.hpp"
#include "simocap/sweep.hpp"

namespace simocap {

double gdof_theorem(int N, double alpha) {
    if (N < 1) throw Error("gdof_theorem: N must be >= 1");
    if (alpha < 0.0) throw Error("gdof_theorem: alpha must be >= 0");
    const double n = N;
    if (alpha <= 0.5) return 1.0 - alpha / n;
    if (alpha <= (n + 1.0) / (2.0 * n + 1.0)) return (n - 1.0) / n + alpha / n;
    if (alpha <= 1.0) return 1.0 - alpha / (n + 1.0);
    if (alpha <= (n + 1.0) / n) return n / (n + 1.0) * alpha;
    return 1.0;
}

double gdof_tin(double alpha) { return std::max(1.0 - alpha, 0.0); }

double gdof_orthogonal(int N) {
    if (N < 1) throw Error("gdof_orthogonal: N must be >= 1");
    return 1.0 / (N + 1.0);
}

double o1_capacity(int N, double log_snr, double log_inr) {
    if (!(log_snr > 0.0)) throw Error("o1_capacity: log_snr must be positive");
    const double n = N;
    if (log_inr < 0.0) return log_snr;
    if (log_inr < 0.5 * log_snr) return log_snr - log_inr / n;
    if (log_inr <= (n + 1.0) / (2.0 * n + 1.0) * log_snr)
        return (n - 1.0) / n * log_snr + log_inr / n;
    if (log_inr <= log_snr) return log_snr - log_inr / (n + 1.0);
    if (log_inr <= (n + 1.0) / n * log_snr) return n / (n + 1.0) * log_inr;
    return log_snr;
}

namespace {

std::size_t numeric_rank(const ComplexMatrix& m) {
    const ComplexMatrix g = m.adjoint() * m;
    return psd_factor(g, 1e-9 * std::max(1.0, g.max_abs())).rank;
}

void check_lemma_preconditions(const ComplexMatrix& h1, const ComplexMatrix& h2, double alpha,
                               double beta) {
    if (h1.rows() != h2.rows()) throw Error("lemma: H1 and H2 must share row count");
    if (alpha < beta) throw Error("lemma: requires alpha >= beta");
    const std::size_t n = h1.rows(), r1 = h1.cols(), r2 = h2.cols();
    if (r1 + r2 < n) throw DegenerateChannel("lemma: requires r1 + r2 >= N");
    if (numeric_rank(h1) < r1 || numeric_rank(h2) < r2)
        throw DegenerateChannel("lemma: column-rank deficient factor");
    std::vector<ComplexVector> cols;
    for (std::size_t c = 0; c < r1; ++c) {
        ComplexVector v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = h1(i, c);
        cols.push_back(std::move(v));
    }
    for (std::size_t c = 0; c < r2; ++c) {
        ComplexVector v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = h2(i, c);
        cols.push_back(std::move(v));
    }
    const ComplexMatrix joint = ComplexMatrix::from_columns(cols);
    if (numeric_rank(joint) < std::min(n, r1 + r2))
        throw DegenerateChannel("lemma: stacked channel not in general position");
}

} // namespace

namespace {

OuterSum scaled_columns(const ComplexMatrix& h, double coef) {
    OuterSum terms;
    for (std::size_t c = 0; c < h.cols(); ++c) {
        ComplexVector v(h.rows());
        for (std::size_t i = 0; i < h.rows(); ++i) v[i] = h(i, c);
        terms.push_back({std::move(v), coef});
    }
    return terms;
}

} // namespace

double lemma1_value(const ComplexMatrix& h1, const ComplexMatrix& h2, double alpha, double beta,
                    double log2_rho) {
    const std::size_t n = h1.rows();
    const double pa = std::exp2(alpha * log2_rho), pb = std::exp2(beta * log2_rho);
    OuterSum terms = scaled_columns(h1, pa);
    for (auto& t : scaled_columns(h2, pb)) terms.push_back(std::move(t));
    return logdet_id_plus(terms, n);
}

double lemma2_value(const ComplexMatrix& h1, const ComplexMatrix& h2, double alpha, double beta,
                    double log2_rho) {
    // Inverse route, not the determinant ratio: I + (I + pb H2 H2^H)^-1 pa H1 H1^H,
    // entirely in extended precision (the ratio route is the cross-check).
    const std::size_t n = h1.rows();
    const double pa = std::exp2(alpha * log2_rho), pb = std::exp2(beta * log2_rho);
    mp::Mat b = mp::Mat::identity(n);
    for (std::size_t c = 0; c < h2.cols(); ++c) {
        ComplexVector v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = h2(i, c);
        b.add_outer(v, pb);
    }
    mp::Mat a(n, n);
    for (std::size_t c = 0; c < h1.cols(); ++c) {
        ComplexVector v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = h1(i, c);
        a.add_outer(v, pa);
    }
    mp::Mat m = mp::lu_solve(std::move(b), std::move(a), kPivotFloor);
    for (std::size_t i = 0; i < n; ++i) m(i, i) += mp::Complex(1.0, 0.0);
    return mp::lu_logdet2(std::move(m), kPivotFloor);
}

namespace {

SlopeReport slope_report(double v1, double v2, std::pair<double, double> lp, double predicted) {
    SlopeReport r;
    r.slope = (v2 - v1) / (lp.second - lp.first);
    r.predicted = predicted;
    r.error = std::abs(r.slope - predicted);
    return r;
}

} // namespace

SlopeReport verify_lemma1(const ComplexMatrix& h1, const ComplexMatrix& h2, double alpha,
                          double beta, std::pair<double, double> log2_rho_pair) {
    check_lemma_preconditions(h1, h2, alpha, beta);
    const double n = static_cast<double>(h1.rows()), r1 = static_cast<double>(h1.cols());
    const double predicted = r1 * alpha + (n - r1) * beta;
    return slope_report(lemma1_value(h1, h2, alpha, beta, log2_rho_pair.first),
                        lemma1_value(h1, h2, alpha, beta, log2_rho_pair.second), log2_rho_pair,
                        predicted);
}

SlopeReport verify_lemma2(const ComplexMatrix& h1, const ComplexMatrix& h2, double alpha,
                          double beta, std::pair<double, double> log2_rho_pair) {
    check_lemma_preconditions(h1, h2, alpha, beta);
    const double n = static_cast<double>(h1.rows());
    const double r1 = static_cast<double>(h1.cols()), r2 = static_cast<double>(h2.cols());
    const double predicted = r1 * alpha + (n - r1 - r2) * beta;
    return slope_report(lemma2_value(h1, h2, alpha, beta, log2_rho_pair.first),
                        lemma2_value(h1, h2, alpha, beta, log2_rho_pair.second), log2_rho_pair,
                        predicted);
}

double estimate_gdof_numeric(const RateFunction& rate_fn, int N, double alpha,
                             std::pair<double, double> log2_rho_pair,
                             const std::vector<std::uint64_t>& seeds) {
    if (seeds.empty()) throw Error("estimate_gdof_numeric: needs at least one seed");
    if (log2_rho_pair.second <= log2_rho_pair.first)
        throw Error("estimate_gdof_numeric: rho pair must increase");
    std::vector<double> slopes(seeds.size());
    parallel_for(seeds.size(), [&](std::size_t s) {
        const SymmetricSimoChannel c1 =
            generate_symmetric(N, std::exp2(log2_rho_pair.first), alpha, seeds[s]);
        const SymmetricSimoChannel c2 =
            generate_symmetric(N, std::exp2(log2_rho_pair.second), alpha, seeds[s]);
        slopes[s] =
            (rate_fn(c2) - rate_fn(c1)) / (log2_rho_pair.second - log2_rho_pair.first);
    });
    std::sort(slopes.begin(), slopes.end());
    const std::size_t m = slopes.size();
    return (m % 2 == 1) ? slopes[m / 2] : 0.5 * (slopes[m / 2 - 1] + slopes[m / 2]);
}

double gap_certificate(double c_sq) {
    if (c_sq < 0.0 || c_sq >= 1.0) throw Error("gap_certificate: needs 0 <= |c|^2 < 1");
    return std::max(3.0, 8.0 / 3.0 - std::log2(1.0 - c_sq) / 3.0);
}

namespace {

// scale * (H01 H01^H + H02 H02^H) at receiver 0
OuterSum interferer_terms(const SymmetricSimoChannel& ch, double scale) {
    return {{ch.H[0][1], scale}, {ch.H[0][2], scale}};
}

} // namespace

double gapouterbound2(const SymmetricSimoChannel& ch) {
    if (ch.N != 2) throw Error("gapouterbound2: needs N=2");
    const double rho = ch.snr, inr = ch.inr();
    const double rho1a = rho / inr; // rho^(1-alpha)
    OuterSum terms = interferer_terms(ch, inr);
    terms.push_back({ch.H[0][0], rho1a});
    return 0.5 * logdet_id_plus(terms, ch.N) + 0.5 * (2.0 + std::log2(1.0 + rho1a));
}

double gapouterbound3(const SymmetricSimoChannel& ch) {
    if (ch.N != 2) throw Error("gapouterbound3: needs N=2");
    const double rho = ch.snr, inr = ch.inr();
    OuterSum a = interferer_terms(ch, inr);
    OuterSum b = a;
    b.push_back({ch.H[0][0], rho});
    const double third = logdet_id_plus(interferer_terms(ch, inr / rho), ch.N);
    return (logdet_id_plus(b, ch.N) - logdet_id_plus(a, ch.N) + third) / 3.0 +
           2.0 / 3.0 * std::log2(1.0 + rho);
}

double gap_outer_augmented(const SymmetricSimoChannel& ch) {
    double best = outer_symmetric(ch);
    best = std::min(best, gapouterbound2(ch));
    best = std::min(best, gapouterbound3(ch));
    for (std::size_t j = 0; j < ch.K(); ++j)
        for (std::size_t k = 0; k < ch.K(); ++k)
            if (j != k) best = std::min(best, etw_two_user_bound(ch, j, k));
    return best;
}

GramSpec3 boundary_gram(double c_sq, Rng& rng) {
    if (c_sq < 0.0 || c_sq > 1.0) throw Error("boundary_gram: needs 0 <= |c|^2 <= 1");
    const double c = std::sqrt(c_sq);
    const double s = std::sqrt(1.0 - c_sq);
    // a = e1, b = c e1 + s e2, d random unit
    ComplexVector d(2);
    double nrm;
    do {
        d[0] = rng.complex_gaussian();
        d[1] = rng.complex_gaussian();
        nrm = d.norm();
    } while (nrm < 1e-6);
    d *= 1.0 / nrm;
    GramSpec3 g;
    g.c = c;
    g.c1 = d[0];                                // a^H d
    g.c2 = c * d[0] + s * d[1];                 // b^H d (real a, b)
    return g;
}

GapRow evaluate_gap_point(double log2_rho, double alpha, const GramSpec3& gram,
                          std::uint64_t seed) {
    const SymmetricSimoChannel ch =
        generate_completely_symmetric3(std::exp2(log2_rho), alpha, gram, seed);
    GapRow row;
    row.log2_rho = log2_rho;
    row.alpha = alpha;
    row.c_sq = std::norm(gram.c);
    row.seed = seed;
    row.inner_bits = inner_symmetric(ch);
    row.outer_bits = gap_outer_augmented(ch);
    row.gap_bits = row.outer_bits - row.inner_bits;
    row.certificate_bits = gap_certificate(row.c_sq);
    return row;
}

GapReport gap_scan(const GapGridSpec& grid) {
    if (grid.log2_rhos.empty() || grid.alphas.empty() || grid.c_sqs.empty() ||
        grid.seeds.empty())
        throw Error("gap_scan: empty grid");

    struct Point {
        double log2_rho, alpha, c_sq;
        std::uint64_t seed, channel_seed;
    };
    std::vector<Point> points;
    for (double lr : grid.log2_rhos)
        for (std::size_t ia = 0; ia < grid.alphas.size(); ++ia)
            for (std::size_t ic = 0; ic < grid.c_sqs.size(); ++ic)
                for (std::uint64_t seed : grid.seeds) {
                    // Channel seed must not depend on rho: gap-vs-rho rows
                    // then share one channel realization.
                    const std::uint64_t cs =
                        Rng::mix(seed, Rng::mix(ia + 1, ic + 1));
                    points.push_back({lr, grid.alphas[ia], grid.c_sqs[ic], seed, cs});
                }

    GapReport report;
    report.rows.resize(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        const Point& pt = points[i];
        Rng gram_rng(pt.channel_seed);
        const GramSpec3 gram = boundary_gram(pt.c_sq, gram_rng);
        GapRow row = evaluate_gap_point(pt.log2_rho, pt.alpha, gram, pt.channel_seed);
        row.seed = pt.seed;
        report.rows[i] = row;
    });
    for (std::size_t i = 0; i < report.rows.size(); ++i)
        if (report.rows[i].gap_bits > report.rows[i].certificate_bits + 1e-6)
            report.violations.push_back(i);
    return report;
}

void throw_if_violated(const GapReport& report) {
    if (report.ok()) return;
    const GapRow& w = report.rows[report.violations.front()];
    std::ostringstream os;
    os << "gap certificate violated at log2_rho=" << w.log2_rho << " alpha=" << w.alpha
       << " c_sq=" << w.c_sq << " seed=" << w.seed << ": gap " << w.gap_bits
       << " > certificate " << w.certificate_bits;
    throw CertificateViolated(os.str());
}

namespace {

std::string format_sig(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

std::string GapReport::to_csv() const {
    std::ostringstream os;
    os << "log2_rho,alpha,c_sq,seed,inner_bits,outer_bits,gap_bits,certificate_bits\n";
    for (const auto& r : rows) {
        os << format_sig(r.log2_rho) << ',' << format_sig(r.alpha) << ',' << format_sig(r.c_sq)
           << ',' << r.seed << ',' << format_sig(r.inner_bits) << ',' << format_sig(r.outer_bits)
           << ',' << format_sig(r.gap_bits) << ',' << format_sig(r.certificate_bits) << '\n';
    }
    return os.str();
}

std::string GapReport::to_json() const {
    nlohmann::json rows_json = nlohmann::json::array();
    for (const auto& r : rows) {
        rows_json.push_back({{"log2_rho", r.log2_rho},
                             {"alpha", r.alpha},
                             {"c_sq", r.c_sq},
                             {"seed", r.seed},
                             {"inner_bits", r.inner_bits},
                             {"outer_bits", r.outer_bits},
                             {"gap_bits", r.gap_bits},
                             {"certificate_bits", r.certificate_bits}});
    }
    nlohmann::json j;
    j["rows"] = rows_json;
    j["violations"] = violations;
    return j.dump();
}

} // namespace simocap
