#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "simocap/channel.hpp"
#include "simocap/polytope.hpp"

namespace simocap {

// Han-Kobayashi power split. Private power is set so the private signal is
// received at the noise floor of the unintended receivers: p_private = 1/INR
// when INR > 1, otherwise everything is private.
struct PowerSplit {
    double p_private = 1.0;
    double p_common = 0.0;
};

PowerSplit hk_split(double inr);

struct Signal {
    ComplexVector direction;
    double power = 0.0;
};

// MAC capacity region at one receiver: for every nonempty subset S,
// sum_{k in S} R_k <= log2 |I + noise^-1 sum_{k in S} P_k h_k h_k^H|.
Polytope mac_region(const ComplexMatrix& effective_noise, const std::vector<Signal>& signals);

// Largest R with (R, ..., R) inside the region; all coefficient vectors here
// are 0/1 so this is min over halfspaces of b / |S|.
double symmetric_point(const Polytope& region);

// Intersection of the per-receiver decode-everything MAC regions.
Polytope decode_all_region(const GeneralSimoChannel& ch);
double decode_all_rate(const GeneralSimoChannel& ch);
double decode_all_symmetric_rate(const SymmetricSimoChannel& ch);

double hk_private_rate(const SymmetricSimoChannel& ch);

struct BindingConstraint {
    double rate = 0.0;
    std::size_t receiver = 0;
    unsigned subset_mask = 0; // bit i set -> user i in the binding subset
};

double hk_common_symmetric_rate(const SymmetricSimoChannel& ch);
BindingConstraint hk_common_symmetric_rate_detail(const SymmetricSimoChannel& ch);

double hk_symmetric_rate(const SymmetricSimoChannel& ch);

// Single-user decoding with all interference in the noise.
double tin_rate(const SymmetricSimoChannel& ch);

// Best of decode-all, Han-Kobayashi, and TIN.
double inner_symmetric(const SymmetricSimoChannel& ch);

} // namespace simocap
