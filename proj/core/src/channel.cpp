#include "simocap/channel.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace simocap {

double SymmetricSimoChannel::inr() const { return std::pow(snr, alpha); }

GeneralSimoChannel SymmetricSimoChannel::strong_form() const {
    GeneralSimoChannel g;
    g.K = K();
    g.N = N;
    g.normalized_direct = true;
    g.P.assign(g.K, snr);
    const double cross_scale = std::pow(snr, (alpha - 1.0) / 2.0);
    g.H.assign(g.K, std::vector<ComplexVector>(g.K));
    for (std::size_t j = 0; j < g.K; ++j)
        for (std::size_t i = 0; i < g.K; ++i)
            g.H[j][i] = (i == j) ? H[j][i] : H[j][i] * cross_scale;
    return g;
}

ComplexMatrix GramSpec3::gram() const {
    ComplexMatrix g(3, 3);
    g(0, 0) = g(1, 1) = g(2, 2) = 1.0;
    g(0, 1) = c;
    g(1, 0) = std::conj(c);
    g(0, 2) = c1;
    g(2, 0) = std::conj(c1);
    g(1, 2) = c2;
    g(2, 1) = std::conj(c2);
    return g;
}

namespace {

ComplexVector random_unit_vector(std::size_t n, Rng& rng) {
    ComplexVector v(n);
    double nrm;
    do {
        for (std::size_t i = 0; i < n; ++i) v[i] = rng.complex_gaussian();
        nrm = v.norm();
    } while (nrm < 1e-6);
    v *= 1.0 / nrm;
    return v;
}

bool in_general_position(const std::vector<ComplexVector>& vecs) {
    for (std::size_t a = 0; a < vecs.size(); ++a)
        for (std::size_t b = a + 1; b < vecs.size(); ++b)
            if (std::abs(inner(vecs[a], vecs[b])) > 1.0 - kGeneralPositionTol) return false;
    return true;
}

nlohmann::json vectors_to_json(const std::vector<std::vector<ComplexVector>>& h) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : h) {
        nlohmann::json cols = nlohmann::json::array();
        for (const auto& v : row) {
            nlohmann::json entries = nlohmann::json::array();
            for (std::size_t k = 0; k < v.size(); ++k)
                entries.push_back({v[k].real(), v[k].imag()});
            cols.push_back(entries);
        }
        rows.push_back(cols);
    }
    return rows;
}

std::vector<std::vector<ComplexVector>> vectors_from_json(const nlohmann::json& rows) {
    std::vector<std::vector<ComplexVector>> h;
    for (const auto& row : rows) {
        std::vector<ComplexVector> cols;
        for (const auto& vj : row) {
            ComplexVector v(vj.size());
            for (std::size_t k = 0; k < vj.size(); ++k)
                v[k] = cplx(vj[k][0].get<double>(), vj[k][1].get<double>());
            cols.push_back(std::move(v));
        }
        h.push_back(std::move(cols));
    }
    return h;
}

} // namespace

SymmetricSimoChannel generate_symmetric(std::size_t N, double snr, double alpha,
                                        std::uint64_t seed) {
    if (N < 1) throw Error("generate_symmetric: N must be >= 1");
    if (!(snr > 0.0)) throw Error("generate_symmetric: snr must be positive");
    if (alpha < 0.0) throw Error("generate_symmetric: alpha must be >= 0");

    SymmetricSimoChannel ch;
    ch.N = N;
    ch.snr = snr;
    ch.alpha = alpha;
    const std::size_t K = ch.K();
    Rng rng(seed);
    ch.H.assign(K, std::vector<ComplexVector>(K));
    for (std::size_t j = 0; j < K; ++j) {
        std::vector<ComplexVector> vecs;
        int attempts = 0;
        do {
            if (++attempts > 100) throw DegenerateDraw("generate_symmetric: rejection failed");
            vecs.clear();
            for (std::size_t i = 0; i < K; ++i) vecs.push_back(random_unit_vector(N, rng));
        } while (N >= 2 && !in_general_position(vecs));
        ch.H[j] = std::move(vecs);
    }
    return ch;
}

SymmetricSimoChannel generate_completely_symmetric3(double snr, double alpha,
                                                    const GramSpec3& gram, std::uint64_t seed) {
    PsdFactor f = psd_factor(gram.gram());
    if (f.rank > 2)
        throw NotPSD("generate_completely_symmetric3: gram has rank 3, not realizable in C^2");

    // Rows of the factor conjugated so that inner(v_i, v_j) = G(i, j).
    auto row_vec = [&](std::size_t i) {
        ComplexVector v(2);
        for (std::size_t k = 0; k < f.rank; ++k) v[k] = std::conj(f.v(i, k));
        return v;
    };
    const ComplexVector va = row_vec(0), vb = row_vec(1), vd = row_vec(2);

    SymmetricSimoChannel ch;
    ch.N = 2;
    ch.snr = snr;
    ch.alpha = alpha;
    ch.H.assign(3, std::vector<ComplexVector>(3));
    // Receiver j's ordered triple (interferer-a, interferer-b, desired):
    // rx0: (H01, H02, H00); rx1: (H10, H12, H11); rx2: (H21, H20, H22).
    ch.H[0][1] = va;
    ch.H[0][2] = vb;
    ch.H[0][0] = vd;
    ch.H[1][0] = va;
    ch.H[1][2] = vb;
    ch.H[1][1] = vd;
    ch.H[2][1] = va;
    ch.H[2][0] = vb;
    ch.H[2][2] = vd;

    Rng rng(seed);
    for (std::size_t j = 0; j < 3; ++j) apply_receiver_unitary(ch, j, random_unitary(2, rng));
    return ch;
}

namespace {

cplx correlation_of(const ComplexVector& a, const ComplexVector& b) {
    const double na = a.norm(), nb = b.norm();
    if (na <= 0.0 || nb <= 0.0) throw ZeroVector("correlation: zero-norm vector");
    return inner(a, b) / (na * nb);
}

} // namespace

cplx correlation(const SymmetricSimoChannel& ch, std::size_t j, std::size_t k, std::size_t i) {
    if (k == i) throw Error("correlation: k and i must differ");
    return correlation_of(ch.H[j][k], ch.H[j][i]);
}

cplx correlation(const GeneralSimoChannel& ch, std::size_t j, std::size_t k, std::size_t i) {
    if (k == i) throw Error("correlation: k and i must differ");
    return correlation_of(ch.H[j][k], ch.H[j][i]);
}

ValidationReport validate(const SymmetricSimoChannel& ch) {
    ValidationReport rep;
    std::ostringstream os;
    if (!(ch.snr > 0.0)) rep.violations.push_back("snr must be positive");
    if (ch.alpha < 0.0) rep.violations.push_back("alpha must be nonnegative");
    const std::size_t K = ch.K();
    if (ch.H.size() != K) {
        rep.violations.push_back("H must be K x K");
        return rep;
    }
    for (std::size_t j = 0; j < K; ++j) {
        if (ch.H[j].size() != K) {
            rep.violations.push_back("H must be K x K");
            return rep;
        }
        for (std::size_t i = 0; i < K; ++i) {
            const auto& v = ch.H[j][i];
            if (v.size() != ch.N) {
                os.str("");
                os << "H[" << j << "][" << i << "] has wrong length";
                rep.violations.push_back(os.str());
                continue;
            }
            if (!v.finite()) {
                os.str("");
                os << "H[" << j << "][" << i << "] has non-finite entries";
                rep.violations.push_back(os.str());
                continue;
            }
            if (std::abs(v.norm() - 1.0) > 1e-9) {
                os.str("");
                os << "H[" << j << "][" << i << "] is not unit norm";
                rep.violations.push_back(os.str());
            }
        }
        if (ch.N >= 2) {
            for (std::size_t a = 0; a < K; ++a)
                for (std::size_t b = a + 1; b < K; ++b) {
                    if (ch.H[j][a].size() != ch.N || ch.H[j][b].size() != ch.N) continue;
                    if (ch.H[j][a].norm() <= 0.0 || ch.H[j][b].norm() <= 0.0) continue;
                    if (std::abs(correlation_of(ch.H[j][a], ch.H[j][b])) > 1.0 - kGeneralPositionTol) {
                        os.str("");
                        os << "receiver " << j << ": vectors " << a << "," << b
                           << " violate general position";
                        rep.violations.push_back(os.str());
                    }
                }
        }
    }
    return rep;
}

ValidationReport validate(const GeneralSimoChannel& ch) {
    ValidationReport rep;
    std::ostringstream os;
    if (ch.K < 2) rep.violations.push_back("K must be >= 2");
    if (ch.P.size() != ch.K) rep.violations.push_back("P must have K entries");
    for (double p : ch.P)
        if (!(p >= 0.0)) rep.violations.push_back("powers must be nonnegative");
    if (ch.H.size() != ch.K) {
        rep.violations.push_back("H must be K x K");
        return rep;
    }
    for (std::size_t j = 0; j < ch.K; ++j) {
        if (ch.H[j].size() != ch.K) {
            rep.violations.push_back("H must be K x K");
            return rep;
        }
        for (std::size_t i = 0; i < ch.K; ++i) {
            const auto& v = ch.H[j][i];
            if (v.size() != ch.N) {
                os.str("");
                os << "H[" << j << "][" << i << "] has wrong length";
                rep.violations.push_back(os.str());
            } else if (!v.finite()) {
                os.str("");
                os << "H[" << j << "][" << i << "] has non-finite entries";
                rep.violations.push_back(os.str());
            }
        }
        if (ch.normalized_direct && ch.H[j][j].size() == ch.N &&
            std::abs(ch.H[j][j].norm() - 1.0) > 1e-9) {
            os.str("");
            os << "direct link " << j << " is not unit norm";
            rep.violations.push_back(os.str());
        }
    }
    return rep;
}

void apply_receiver_unitary(SymmetricSimoChannel& ch, std::size_t j, const ComplexMatrix& q) {
    for (auto& v : ch.H[j]) v = q * v;
}

ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
    // Gram-Schmidt on a Gaussian matrix; retries on near-dependence.
    for (;;) {
        std::vector<ComplexVector> cols;
        bool ok = true;
        for (std::size_t c = 0; c < n && ok; ++c) {
            ComplexVector v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = rng.complex_gaussian();
            for (const auto& u : cols) v = v - u * inner(u, v);
            const double nrm = v.norm();
            if (nrm < 1e-6) {
                ok = false;
                break;
            }
            v *= 1.0 / nrm;
            cols.push_back(std::move(v));
        }
        if (ok) return ComplexMatrix::from_columns(cols);
    }
}

std::string GeneralSimoChannel::to_json() const {
    nlohmann::json j;
    j["K"] = K;
    j["N"] = N;
    j["H"] = vectors_to_json(H);
    j["P"] = P;
    j["normalized_direct"] = normalized_direct;
    return j.dump();
}

GeneralSimoChannel GeneralSimoChannel::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    GeneralSimoChannel ch;
    ch.K = j.at("K").get<std::size_t>();
    ch.N = j.at("N").get<std::size_t>();
    ch.H = vectors_from_json(j.at("H"));
    ch.P = j.at("P").get<std::vector<double>>();
    ch.normalized_direct = j.value("normalized_direct", false);
    return ch;
}

std::string SymmetricSimoChannel::to_json() const {
    nlohmann::json j;
    j["K"] = K();
    j["N"] = N;
    j["snr"] = snr;
    j["alpha"] = alpha;
    j["H"] = vectors_to_json(H);
    j["P"] = std::vector<double>(K(), 1.0);
    return j.dump();
}

SymmetricSimoChannel SymmetricSimoChannel::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    SymmetricSimoChannel ch;
    ch.N = j.at("N").get<std::size_t>();
    ch.snr = j.at("snr").get<double>();
    ch.alpha = j.at("alpha").get<double>();
    ch.H = vectors_from_json(j.at("H"));
    if (j.contains("K") && j.at("K").get<std::size_t>() != ch.K())
        throw Error("SymmetricSimoChannel: K must equal N+1");
    return ch;
}

} // namespace simocap
