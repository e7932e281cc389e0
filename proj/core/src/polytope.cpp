#include "simocap/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "simocap/rng.hpp"

namespace simocap {

namespace {

constexpr double kEps = 1e-9;

// Dense tableau simplex, Bland's rule. Maximizes c.x subject to A x <= b,
// x >= 0 with b >= 0, i.e. the slack basis is feasible from the start.
// Returns the optimum; throws Unbounded when a pivot column has no limit.
double simplex_max(const std::vector<std::vector<double>>& arows, const std::vector<double>& b,
                   const std::vector<double>& c) {
    const std::size_t m = arows.size();
    const std::size_t n = c.size();
    // tableau: m rows of [A | I | b], objective row below.
    std::vector<std::vector<double>> t(m + 1, std::vector<double>(n + m + 1, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = arows[i][j];
        t[i][n + i] = 1.0;
        t[i][n + m] = b[i];
        if (b[i] < -1e-7) throw Error("simplex_max: negative right-hand side");
        if (t[i][n + m] < 0.0) t[i][n + m] = 0.0;
    }
    for (std::size_t j = 0; j < n; ++j) t[m][j] = -c[j];

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    for (;;) {
        // Bland: entering variable = lowest index with negative reduced cost.
        std::size_t enter = n + m;
        for (std::size_t j = 0; j < n + m; ++j) {
            if (t[m][j] < -kEps) {
                enter = j;
                break;
            }
        }
        if (enter == n + m) break; // optimal

        // Ratio test, ties broken by lowest basis index (Bland).
        std::size_t leave = m;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] > kEps) {
                const double ratio = t[i][n + m] / t[i][enter];
                if (ratio < best_ratio - 1e-15 ||
                    (std::abs(ratio - best_ratio) <= 1e-15 &&
                     (leave == m || basis[i] < basis[leave]))) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
        }
        if (leave == m) throw Unbounded("support: LP unbounded in direction");

        // pivot
        const double piv = t[leave][enter];
        for (double& v : t[leave]) v /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double f = t[i][enter];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= n + m; ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }
    return t[m][n + m];
}

// Expand free coordinates into x+ - x- so the simplex sees only
// nonnegative variables.
struct LpForm {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    std::vector<double> c;
};

LpForm build_lp(const Polytope& p, const std::vector<double>& dir,
                const std::vector<bool>& row_mask) {
    std::vector<std::size_t> free_vars;
    for (std::size_t j = 0; j < p.dim; ++j)
        if (!p.nonneg[j]) free_vars.push_back(j);

    const std::size_t n = p.dim + free_vars.size();
    LpForm lp;
    lp.c.assign(n, 0.0);
    for (std::size_t j = 0; j < p.dim; ++j) lp.c[j] = dir[j];
    for (std::size_t k = 0; k < free_vars.size(); ++k) lp.c[p.dim + k] = -dir[free_vars[k]];

    for (std::size_t i = 0; i < p.halfspaces.size(); ++i) {
        if (!row_mask.empty() && !row_mask[i]) continue;
        const auto& h = p.halfspaces[i];
        std::vector<double> row(n, 0.0);
        for (std::size_t j = 0; j < p.dim; ++j) row[j] = h.a[j];
        for (std::size_t k = 0; k < free_vars.size(); ++k) row[p.dim + k] = -h.a[free_vars[k]];
        lp.a.push_back(std::move(row));
        lp.b.push_back(h.b);
    }
    return lp;
}

double support_masked(const Polytope& p, const std::vector<double>& dir,
                      const std::vector<bool>& row_mask) {
    LpForm lp = build_lp(p, dir, row_mask);
    return simplex_max(lp.a, lp.b, lp.c);
}

bool rows_close(const Halfspace& x, const Halfspace& y) {
    double scale = std::abs(x.b) + std::abs(y.b);
    for (std::size_t j = 0; j < x.a.size(); ++j) scale += std::abs(x.a[j]) + std::abs(y.a[j]);
    scale = std::max(1.0, scale);
    if (std::abs(x.b - y.b) > kEps * scale) return false;
    for (std::size_t j = 0; j < x.a.size(); ++j)
        if (std::abs(x.a[j] - y.a[j]) > kEps * scale) return false;
    return true;
}

// Rows that x >= 0 already implies: a <= 0 componentwise with b >= 0.
bool trivially_implied(const Polytope& p, const Halfspace& h) {
    if (h.b < -kEps) return false;
    for (std::size_t j = 0; j < h.a.size(); ++j)
        if (h.a[j] > kEps && p.nonneg[j]) return false;
    for (std::size_t j = 0; j < h.a.size(); ++j)
        if (std::abs(h.a[j]) > kEps && !p.nonneg[j]) return false;
    return true;
}

} // namespace

Polytope Polytope::empty_region(std::size_t dim) {
    Polytope p;
    p.dim = dim;
    p.nonneg.assign(dim, true);
    return p;
}

void Polytope::add(std::vector<double> a, double b) {
    halfspaces.push_back({std::move(a), b});
}

double support(const Polytope& p, const std::vector<double>& dir) {
    return support_masked(p, dir, {});
}

Polytope remove_redundant(const Polytope& p, double tol) {
    Polytope q = p;
    // cheap passes first: implied-by-nonnegativity rows, then duplicates
    std::vector<Halfspace> kept;
    for (const auto& h : q.halfspaces) {
        if (trivially_implied(q, h)) continue;
        bool dup = false;
        for (const auto& k : kept) {
            if (rows_close(h, k)) {
                dup = true;
                break;
            }
        }
        if (!dup) kept.push_back(h);
    }
    q.halfspaces = std::move(kept);

    // LP pass: a row is redundant when the others already enforce it.
    std::vector<bool> active(q.halfspaces.size(), true);
    for (std::size_t i = 0; i < q.halfspaces.size(); ++i) {
        std::vector<bool> mask = active;
        mask[i] = false;
        bool redundant = false;
        try {
            const double s = support_masked(q, q.halfspaces[i].a, mask);
            redundant = s <= q.halfspaces[i].b + tol;
        } catch (const Unbounded&) {
            redundant = false;
        }
        if (redundant) active[i] = false;
    }
    Polytope r;
    r.dim = q.dim;
    r.nonneg = q.nonneg;
    for (std::size_t i = 0; i < q.halfspaces.size(); ++i)
        if (active[i]) r.halfspaces.push_back(q.halfspaces[i]);
    return r;
}

Polytope fm_eliminate(const Polytope& p, std::size_t var_index) {
    if (var_index >= p.dim) throw Error("fm_eliminate: variable index out of range");

    std::vector<Halfspace> uppers, lowers, keep; // sign of the eliminated coefficient
    for (const auto& h : p.halfspaces) {
        const double ak = h.a[var_index];
        if (ak > kEps)
            uppers.push_back(h);
        else if (ak < -kEps)
            lowers.push_back(h);
        else
            keep.push_back(h);
    }
    if (p.nonneg[var_index]) {
        Halfspace nn;
        nn.a.assign(p.dim, 0.0);
        nn.a[var_index] = -1.0;
        nn.b = 0.0;
        lowers.push_back(nn);
    }

    auto drop_var = [&](const Halfspace& h) {
        Halfspace r;
        r.b = h.b;
        r.a.reserve(p.dim - 1);
        for (std::size_t j = 0; j < p.dim; ++j)
            if (j != var_index) r.a.push_back(h.a[j]);
        return r;
    };

    Polytope out;
    out.dim = p.dim - 1;
    out.nonneg = p.nonneg;
    out.nonneg.erase(out.nonneg.begin() + static_cast<std::ptrdiff_t>(var_index));

    for (const auto& h : keep) out.halfspaces.push_back(drop_var(h));
    for (const auto& u : uppers) {
        for (const auto& l : lowers) {
            const double cu = u.a[var_index];
            const double cl = -l.a[var_index];
            // cl * u + cu * l cancels the eliminated coordinate
            Halfspace h;
            h.a.assign(p.dim, 0.0);
            for (std::size_t j = 0; j < p.dim; ++j) h.a[j] = cl * u.a[j] + cu * l.a[j];
            h.b = cl * u.b + cu * l.b;
            h.a[var_index] = 0.0;
            out.halfspaces.push_back(drop_var(h));
        }
    }
    return remove_redundant(out);
}

EqualityReport polytope_equal(const Polytope& p, const Polytope& q,
                              const std::vector<std::vector<double>>& dirs, double tol) {
    EqualityReport rep;
    double worst = 0.0;
    for (const auto& d : dirs) {
        const double sp = support(p, d);
        const double sq = support(q, d);
        const double diff = std::abs(sp - sq);
        if (diff > worst) {
            worst = diff;
            rep.witness_dir = d;
            rep.support_p = sp;
            rep.support_q = sq;
        }
    }
    rep.equal = worst <= tol;
    return rep;
}

std::vector<std::vector<double>> make_directions(std::size_t dim, std::size_t n_random,
                                                 std::uint64_t seed) {
    std::vector<std::vector<double>> dirs;
    std::size_t count = 1;
    for (std::size_t j = 0; j < dim; ++j) count *= 3;
    for (std::size_t code = 1; code < count; ++code) {
        std::vector<double> d(dim);
        std::size_t c = code;
        for (std::size_t j = 0; j < dim; ++j) {
            d[j] = static_cast<double>(static_cast<int>(c % 3) - 1);
            c /= 3;
        }
        dirs.push_back(std::move(d));
    }
    Rng rng(seed);
    for (std::size_t k = 0; k < n_random; ++k) {
        std::vector<double> d(dim);
        double nrm = 0.0;
        do {
            nrm = 0.0;
            for (auto& v : d) {
                v = rng.gaussian();
                nrm += v * v;
            }
        } while (nrm < 1e-12);
        nrm = std::sqrt(nrm);
        for (auto& v : d) v /= nrm;
        dirs.push_back(std::move(d));
    }
    return dirs;
}

std::string Polytope::to_json() const {
    nlohmann::json j;
    j["dim"] = dim;
    j["halfspaces"] = nlohmann::json::array();
    for (const auto& h : halfspaces) j["halfspaces"].push_back({{"a", h.a}, {"b", h.b}});
    j["nonneg"] = std::vector<bool>(nonneg.begin(), nonneg.end());
    return j.dump();
}

Polytope Polytope::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    Polytope p;
    p.dim = j.at("dim").get<std::size_t>();
    for (const auto& h : j.at("halfspaces"))
        p.halfspaces.push_back({h.at("a").get<std::vector<double>>(), h.at("b").get<double>()});
    p.nonneg = j.at("nonneg").get<std::vector<bool>>();
    return p;
}

} // namespace simocap
