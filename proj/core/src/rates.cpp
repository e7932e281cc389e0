#include "simocap/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace simocap {

namespace {

OuterSum masked_terms(const std::vector<Signal>& signals, unsigned mask) {
    OuterSum terms;
    for (std::size_t k = 0; k < signals.size(); ++k)
        if (mask & (1u << k)) terms.push_back({signals[k].direction, signals[k].power});
    return terms;
}

// Per-receiver MAC rows against a noise given as identity-plus-outers.
// bound(S) = log2 det(I + noise + sum_S P h h^H) - log2 det(I + noise).
std::vector<double> mac_bounds(const OuterSum& noise_terms, const std::vector<Signal>& signals,
                               std::size_t dim) {
    const double noise_ld = logdet_id_plus(noise_terms, dim);
    std::vector<double> bounds;
    bounds.reserve((1u << signals.size()) - 1);
    for (unsigned mask = 1; mask < (1u << signals.size()); ++mask) {
        OuterSum terms = noise_terms;
        for (const auto& t : masked_terms(signals, mask)) terms.push_back(t);
        bounds.push_back(logdet_id_plus(terms, dim) - noise_ld);
    }
    return bounds;
}

double symmetric_rate_of_bounds(const std::vector<double>& bounds) {
    double best = std::numeric_limits<double>::infinity();
    for (unsigned mask = 1; mask <= bounds.size(); ++mask)
        best = std::min(best, bounds[mask - 1] / __builtin_popcount(mask));
    return best;
}

} // namespace

PowerSplit hk_split(double inr) {
    if (inr < 0.0) throw Error("hk_split: inr must be >= 0");
    PowerSplit s;
    s.p_private = inr > 1.0 ? 1.0 / inr : 1.0;
    s.p_common = 1.0 - s.p_private;
    return s;
}

Polytope mac_region(const ComplexMatrix& effective_noise, const std::vector<Signal>& signals) {
    const double noise_ld = logdet_hermitian(effective_noise);
    const std::size_t users = signals.size();

    Polytope p = Polytope::empty_region(users);
    for (unsigned mask = 1; mask < (1u << users); ++mask) {
        const double bound =
            logdet_plus_outers(effective_noise, masked_terms(signals, mask)) - noise_ld;
        std::vector<double> a(users, 0.0);
        for (std::size_t k = 0; k < users; ++k)
            if (mask & (1u << k)) a[k] = 1.0;
        p.add(std::move(a), bound);
    }
    return p;
}

double symmetric_point(const Polytope& region) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& h : region.halfspaces) {
        double sum = 0.0;
        for (double v : h.a) sum += v;
        if (sum > 0.0) best = std::min(best, h.b / sum);
    }
    return best;
}

Polytope decode_all_region(const GeneralSimoChannel& ch) {
    Polytope all = Polytope::empty_region(ch.K);
    for (std::size_t j = 0; j < ch.K; ++j) {
        std::vector<Signal> sig(ch.K);
        for (std::size_t i = 0; i < ch.K; ++i) sig[i] = {ch.H[j][i], ch.P[i]};
        const Polytope r = mac_region(ComplexMatrix::identity(ch.N), sig);
        all.halfspaces.insert(all.halfspaces.end(), r.halfspaces.begin(), r.halfspaces.end());
    }
    return all;
}

double decode_all_rate(const GeneralSimoChannel& ch) {
    return symmetric_point(decode_all_region(ch));
}

double decode_all_symmetric_rate(const SymmetricSimoChannel& ch) {
    const double rho = ch.snr, inr = ch.inr();
    const std::size_t K = ch.K();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < K; ++j) {
        std::vector<Signal> sig(K);
        for (std::size_t i = 0; i < K; ++i) sig[i] = {ch.H[j][i], i == j ? rho : inr};
        best = std::min(best, symmetric_rate_of_bounds(mac_bounds({}, sig, ch.N)));
    }
    return best;
}

double hk_private_rate(const SymmetricSimoChannel& ch) {
    const double rho = ch.snr, inr = ch.inr();
    const double pp = hk_split(inr).p_private;
    if (pp <= 0.0) return 0.0;
    const std::size_t K = ch.K();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < K; ++j) {
        OuterSum noise;
        for (std::size_t i = 0; i < K; ++i)
            if (i != j) noise.push_back({ch.H[j][i], inr * pp});
        OuterSum with_sig = noise;
        with_sig.push_back({ch.H[j][j], rho * pp});
        best = std::min(best,
                        logdet_id_plus(with_sig, ch.N) - logdet_id_plus(noise, ch.N));
    }
    return best;
}

namespace {

BindingConstraint hk_common_detail_impl(const SymmetricSimoChannel& ch) {
    const double rho = ch.snr, inr = ch.inr();
    const PowerSplit split = hk_split(inr);
    BindingConstraint bc;
    if (split.p_common <= 0.0) return bc;

    const std::size_t K = ch.K();
    bc.rate = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < K; ++j) {
        // Effective noise: thermal + everyone's private signal.
        OuterSum noise;
        for (std::size_t i = 0; i < K; ++i)
            noise.push_back({ch.H[j][i], (i == j ? rho : inr) * split.p_private});
        std::vector<Signal> sig(K);
        for (std::size_t i = 0; i < K; ++i)
            sig[i] = {ch.H[j][i], (i == j ? rho : inr) * split.p_common};
        const std::vector<double> bounds = mac_bounds(noise, sig, ch.N);
        for (unsigned mask = 1; mask <= bounds.size(); ++mask) {
            const double val = bounds[mask - 1] / __builtin_popcount(mask);
            if (val < bc.rate) {
                bc.rate = val;
                bc.receiver = j;
                bc.subset_mask = mask;
            }
        }
    }
    return bc;
}

} // namespace

double hk_common_symmetric_rate(const SymmetricSimoChannel& ch) {
    return hk_common_detail_impl(ch).rate;
}

BindingConstraint hk_common_symmetric_rate_detail(const SymmetricSimoChannel& ch) {
    return hk_common_detail_impl(ch);
}

double hk_symmetric_rate(const SymmetricSimoChannel& ch) {
    return hk_private_rate(ch) + hk_common_symmetric_rate(ch);
}

double tin_rate(const SymmetricSimoChannel& ch) {
    const double rho = ch.snr, inr = ch.inr();
    const std::size_t K = ch.K();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < K; ++j) {
        OuterSum noise;
        for (std::size_t i = 0; i < K; ++i)
            if (i != j) noise.push_back({ch.H[j][i], inr});
        OuterSum with_sig = noise;
        with_sig.push_back({ch.H[j][j], rho});
        best = std::min(best,
                        logdet_id_plus(with_sig, ch.N) - logdet_id_plus(noise, ch.N));
    }
    return best;
}

double inner_symmetric(const SymmetricSimoChannel& ch) {
    return std::max({decode_all_symmetric_rate(ch), hk_symmetric_rate(ch), tin_rate(ch)});
}

} // namespace simocap
