#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "simocap/errors.hpp"

namespace simocap {

struct Halfspace {
    std::vector<double> a;
    double b = 0.0;
};

// Halfspace-described polytope { x : a_i . x <= b_i } with optional implicit
// x_j >= 0 per coordinate. Rate regions always carry the nonnegativity flags
// and nonnegative right-hand sides, so the origin is feasible.
struct Polytope {
    std::size_t dim = 0;
    std::vector<Halfspace> halfspaces;
    std::vector<bool> nonneg; // size dim; true -> x_j >= 0 enforced

    static Polytope empty_region(std::size_t dim);
    void add(std::vector<double> a, double b);

    std::string to_json() const;
    static Polytope from_json(const std::string& text);
};

// max dir . x over p via two-phase dense simplex with Bland's rule.
// Throws Unbounded when the LP is unbounded in that direction.
double support(const Polytope& p, const std::vector<double>& dir);

// Projection of p onto the coordinates other than var_index: every pairing of
// an upper and a lower constraint on the eliminated variable, followed by
// LP-based redundancy removal.
Polytope fm_eliminate(const Polytope& p, std::size_t var_index);

// Drop rows implied by the remaining ones (support test at tolerance `tol`).
Polytope remove_redundant(const Polytope& p, double tol = 1e-9);

struct EqualityReport {
    bool equal = true;
    std::vector<double> witness_dir;
    double support_p = 0.0;
    double support_q = 0.0;
};

// Support-function comparison over the given direction set.
EqualityReport polytope_equal(const Polytope& p, const Polytope& q,
                              const std::vector<std::vector<double>>& dirs, double tol);

// All nonzero sign vectors in {-1,0,1}^dim plus n_random seeded unit sphere
// directions; the fixed direction set used for region equality tests.
std::vector<std::vector<double>> make_directions(std::size_t dim, std::size_t n_random = 200,
                                                 std::uint64_t seed = 2024);

} // namespace simocap
