#pragma once

#include <complex>
#include <cstdint>

namespace simocap {

// Deterministic stream of uniforms/Gaussians. Wraps xoshiro256++ with a
// splitmix64 seeder and a hand-rolled Box-Muller transform so that a given
// seed produces the same draws on every platform and standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform on [0, 1).
    double uniform();

    // Uniform integer in [0, n).
    std::uint64_t uniform_below(std::uint64_t n);

    // Standard real Gaussian N(0, 1).
    double gaussian();

    // Circularly symmetric complex Gaussian CN(0, 1).
    std::complex<double> complex_gaussian();

    // Derive an independent stream for a grid point; mixes the components
    // so neighboring indices do not produce correlated streams.
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b);

  private:
    std::uint64_t s_[4];
    double cached_gaussian_ = 0.0;
    bool has_cached_ = false;
};

} // namespace simocap
