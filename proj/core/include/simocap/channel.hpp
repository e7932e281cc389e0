#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "simocap/complex_matrix.hpp"
#include "simocap/rng.hpp"

namespace simocap {

// K-user SIMO interference channel with N antennas per receiver.
// H[j][i] is the channel vector from transmitter i to receiver j (0-based),
// x_i carries power at most P[i], noise is CN(0, I) at every receiver.
struct GeneralSimoChannel {
    std::size_t K = 0;
    std::size_t N = 0;
    std::vector<std::vector<ComplexVector>> H;
    std::vector<double> P;
    bool normalized_direct = false; // when set, ||H[j][j]|| = 1 is an invariant

    std::string to_json() const;
    static GeneralSimoChannel from_json(const std::string& text);
};

// Symmetric instance: K = N+1 users, unit-norm direction vectors, every
// direct link received at SNR = snr and every cross link at INR = snr^alpha.
struct SymmetricSimoChannel {
    std::size_t N = 0;
    double snr = 1.0;
    double alpha = 0.0;
    std::vector<std::vector<ComplexVector>> H; // unit-norm directions, K x K

    std::size_t K() const { return N + 1; }
    double inr() const;

    // Equivalent general channel in the Theorem-5 normalization: unit direct
    // vectors, cross vectors scaled to norm snr^((alpha-1)/2), P_i = snr.
    // All log-det bounds are invariant to moving scale between powers and
    // vectors, so this single form feeds every general-channel bound.
    GeneralSimoChannel strong_form() const;

    std::string to_json() const;
    static SymmetricSimoChannel from_json(const std::string& text);
};

// Correlation triple of the completely symmetric 3-user channel: interferer
// pair correlation c, desired-vs-interferer correlations c1 and c2. The Gram
// matrix of the ordered triple (interferer-a, interferer-b, desired) is
// [[1, c, c1], [c*, 1, c2], [c1*, c2*, 1]].
struct GramSpec3 {
    cplx c;
    cplx c1;
    cplx c2;

    ComplexMatrix gram() const;
};

// I.i.d. circularly-symmetric Gaussian directions, each normalized to unit
// norm, deterministic in the seed. For N >= 2 a rejection step enforces
// general position (pairwise |correlation| <= 1 - 1e-6 at each receiver);
// single-antenna vectors are always collinear so the check is vacuous there.
SymmetricSimoChannel generate_symmetric(std::size_t N, double snr, double alpha,
                                        std::uint64_t seed);

inline constexpr double kGeneralPositionTol = 1e-6;

// Completely symmetric 3-user, N=2 instance: the ordered Gram of
// (interferer-a, interferer-b, desired) equals `gram` at every receiver and
// distinct receivers are related by independent random unitaries. Requires
// the Gram to be PSD of rank <= 2 (three vectors must fit in C^2).
SymmetricSimoChannel generate_completely_symmetric3(double snr, double alpha,
                                                    const GramSpec3& gram, std::uint64_t seed);

// H[j][k]^H H[j][i] / (||H[j][k]|| ||H[j][i]||), k != i.
cplx correlation(const SymmetricSimoChannel& ch, std::size_t j, std::size_t k, std::size_t i);
cplx correlation(const GeneralSimoChannel& ch, std::size_t j, std::size_t k, std::size_t i);

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const SymmetricSimoChannel& ch);
ValidationReport validate(const GeneralSimoChannel& ch);

// Replace every vector of receiver j by Q v (Q unitary); log-det rates are
// invariant under this map.
void apply_receiver_unitary(SymmetricSimoChannel& ch, std::size_t j, const ComplexMatrix& q);

// Haar-ish random unitary from Gram-Schmidt of a Gaussian matrix.
ComplexMatrix random_unitary(std::size_t n, Rng& rng);

} // namespace simocap
