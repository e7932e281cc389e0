#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "simocap/channel.hpp"
#include "simocap/polytope.hpp"

namespace simocap {

double single_user_bound(const SymmetricSimoChannel& ch); // log2(1 + snr)
double single_user_bound(const GeneralSimoChannel& ch);   // min_j log2(1 + P_j ||H_jj||^2)

// Many-to-one sum-rate bound with the given interfered receiver:
//   log2|I + (I + sum_{i!=r} P_i H_ri H_ri^H)^-1 P_r H_rr H_rr^H|
// + sum_{i!=r} log2(1 + P_i ||H_ii||^2)
// + log2|I + sum_{i!=r} P_i / (1 + ||H_ii||^2 P_i) H_ri H_ri^H|
double many_to_one_bound(const GeneralSimoChannel& ch, std::size_t interfered = 0);

struct WeightedRateBound {
    std::vector<double> weights; // (1, 2, ..., 2, 1)
    double value = 0.0;          // bits
};

// Weighted bound R_1 + 2(R_2 + ... + R_{K-1}) + R_K assembled from the four
// log-det families (Woodbury-reduced conditional covariances). K = 2
// degenerates to the two-user ETW-style sum-rate bound (the middle family is
// empty and the weights collapse to (1, 1)).
WeightedRateBound new_outer_bound(const GeneralSimoChannel& ch);

// The weighted bound on the symmetric channel divided by its total weight 2N.
double symmetric_new_bound(const SymmetricSimoChannel& ch);

// Two-user bound on the ordered pair (j, k):
// (1/2) log2|I + inr H_jk H_jk^H + snr H_jj H_jj^H| + (1/2) log2(1 + snr/(1 + inr)).
double two_user_bound(const SymmetricSimoChannel& ch, std::size_t j, std::size_t k);

// Two-user ETW-style symmetric-rate bound on pair {j, k}: the K = 2 weighted
// bound applied to the subchannel, divided by 2.
double etw_two_user_bound(const SymmetricSimoChannel& ch, std::size_t j, std::size_t k);

// Restriction of a general channel to users {j, k} (in that order).
GeneralSimoChannel two_user_subchannel(const GeneralSimoChannel& ch, std::size_t j,
                                       std::size_t k);

struct NoiseScales3 {
    double a1 = 1.0, a2 = 1.0, a3 = 1.0;
};

// Outer bound for the 3-user, 2-antenna channel: intersection of the three
// MAC regions with receiver k's noise shrunk to a_k^2 I (realized by scaling
// every power at receiver k by 1/a_k^2). Requires unit-norm direct links.
std::pair<NoiseScales3, Polytope> strong_mac_outer(const GeneralSimoChannel& ch);

// True when every receiver's cross links are strong and well separated; the
// MAC intersection is then the capacity region (all a_k = 1).
bool corollary_conditions(const GeneralSimoChannel& ch);

// Min over all implemented outer bounds evaluated as a symmetric rate.
double outer_symmetric(const SymmetricSimoChannel& ch);

} // namespace simocap
