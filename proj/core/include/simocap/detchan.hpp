#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "simocap/polytope.hpp"
#include "simocap/rng.hpp"

namespace simocap {

// 3-user deterministic interference channel over Z_q x Z_q inputs. User i
// sends X_i = (u_i, w_i); the visible interference is V_i = u_i; receiver j
// observes an output computed from its own input and the two interfering
// V symbols. The canonical map adds one interferer per output component:
//   Y_0 = (u_0 + v_1, w_0 + v_2),  Y_1 = (u_1 + v_0, w_1 + v_2),
//   Y_2 = (u_2 + v_0, w_2 + v_1)   (all mod q)
// which is invertible given the receiver's own input, mirroring a 2-antenna
// receiver that can isolate each interference signal. A custom output map
// may be supplied as long as it keeps that invertibility.
struct DetChannel {
    int q = 2;
    int output_cardinality = 4; // number of distinct output symbols (q^2 canonical)
    // (receiver j, own input x, interferer V pair in increasing tx order) -> symbol
    std::function<int(int j, int x, int va, int vb)> output;

    // interferers of receiver j in increasing index order
    static std::array<int, 2> interferers(int j);
    int v_of(int x) const { return x / q; } // V_i = u_i
};

DetChannel build_canonical_det_channel(int q);

// Independent per-user distributions over Z_q x Z_q (index u*q + w).
struct ProductDistribution {
    int q = 2;
    std::array<std::vector<double>, 3> p;

    void validate() const; // nonnegative, sums to 1 within 1e-12
};

ProductDistribution uniform_distribution(int q);
ProductDistribution point_mass_distribution(int q, std::array<int, 3> x);
// Symmetric Dirichlet(1) over each user's q^2 cells.
ProductDistribution dirichlet_distribution(int q, Rng& rng);

// H(Y_j | V_S) for every receiver j and subset S of {0,1,2}, plus H(V_i) and
// H(Y_j | X_j), all in bits, by exhaustive enumeration of the q^6 product
// space. Throws AlphabetTooLarge when q^6 > 1e7.
struct EntropyTable {
    int q = 2;
    // indexed [receiver][subset mask]; bit i of the mask conditions on V_i
    std::array<std::array<double, 8>, 3> h_y_given_v{};
    std::array<double, 3> h_v{};
    std::array<double, 3> h_y_given_x{};

    double y_given_v(int j, unsigned mask) const { return h_y_given_v[j][mask]; }
    std::string to_json() const;
};

EntropyTable entropy_table(const DetChannel& dc, const ProductDistribution& dist);

// |H(Y_j|X_j) - H(V_a) - H(V_b)| <= 1e-9 for all receivers.
bool check_invertibility(const DetChannel& dc, const ProductDistribution& dist);

// Intersection of the six permuted 28-inequality families over (R1, R2, R3).
Polytope theorem1_region(const EntropyTable& t);

// The 8 decoding constraints per receiver over
// (R1p, R2p, R3p, R1c, R2c, R3c), 24 rows plus nonnegativity.
Polytope achievable_constraints(const EntropyTable& t);

// Substitute R_i = R_ip + R_ic and Fourier-Motzkin eliminate the private
// rates; result lives over (R1, R2, R3).
Polytope project_to_rates(const Polytope& p6);

} // namespace simocap
