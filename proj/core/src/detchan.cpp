#include "simocap/detchan.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "json.hpp"

namespace simocap {

std::array<int, 2> DetChannel::interferers(int j) {
    switch (j) {
        case 0: return {1, 2};
        case 1: return {0, 2};
        default: return {0, 1};
    }
}

DetChannel build_canonical_det_channel(int q) {
    if (q < 2) throw Error("build_canonical_det_channel: q must be >= 2");
    DetChannel dc;
    dc.q = q;
    dc.output_cardinality = q * q;
    dc.output = [q](int /*j*/, int x, int va, int vb) {
        const int u = x / q, w = x % q;
        return ((u + va) % q) * q + (w + vb) % q;
    };
    return dc;
}

void ProductDistribution::validate() const {
    for (const auto& pi : p) {
        if (pi.size() != static_cast<std::size_t>(q) * q)
            throw Error("ProductDistribution: wrong cell count");
        double sum = 0.0;
        for (double v : pi) {
            if (v < 0.0) throw Error("ProductDistribution: negative probability");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-12) throw Error("ProductDistribution: not normalized");
    }
}

ProductDistribution uniform_distribution(int q) {
    ProductDistribution d;
    d.q = q;
    for (auto& pi : d.p) pi.assign(static_cast<std::size_t>(q) * q, 1.0 / (q * q));
    return d;
}

ProductDistribution point_mass_distribution(int q, std::array<int, 3> x) {
    ProductDistribution d;
    d.q = q;
    for (int i = 0; i < 3; ++i) {
        d.p[i].assign(static_cast<std::size_t>(q) * q, 0.0);
        d.p[i][x[i]] = 1.0;
    }
    return d;
}

ProductDistribution dirichlet_distribution(int q, Rng& rng) {
    ProductDistribution d;
    d.q = q;
    for (auto& pi : d.p) {
        pi.resize(static_cast<std::size_t>(q) * q);
        double sum = 0.0;
        for (auto& v : pi) {
            // Dirichlet(1) via normalized exponentials.
            double u = rng.uniform();
            while (u <= 0.0) u = rng.uniform();
            v = -std::log(u);
            sum += v;
        }
        for (auto& v : pi) v /= sum;
    }
    return d;
}

namespace {

double entropy_bits(const std::map<long long, double>& dist) {
    double h = 0.0;
    for (const auto& [_, p] : dist)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

} // namespace

EntropyTable entropy_table(const DetChannel& dc, const ProductDistribution& dist) {
    dist.validate();
    const int q = dc.q;
    if (dist.q != q) throw Error("entropy_table: distribution alphabet mismatch");
    const double states = std::pow(static_cast<double>(q), 6);
    if (states > 1e7) throw AlphabetTooLarge("entropy_table: q^6 exceeds 1e7 states");

    const int cells = q * q;
    EntropyTable t;
    t.q = q;

    // marginals of the visible symbols V_i = u_i
    for (int i = 0; i < 3; ++i) {
        std::map<long long, double> pv;
        for (int x = 0; x < cells; ++x) pv[x / q] += dist.p[i][x];
        t.h_v[i] = entropy_bits(pv);
    }

    for (int j = 0; j < 3; ++j) {
        const auto [ia, ib] = DetChannel::interferers(j);
        // joint over (y, v0, v1, v2) and over (y, x_j)
        std::map<long long, double> joint_yv, joint_yx;
        for (int x0 = 0; x0 < cells; ++x0) {
            const double p0 = dist.p[0][x0];
            if (p0 == 0.0) continue;
            for (int x1 = 0; x1 < cells; ++x1) {
                const double p1 = dist.p[1][x1];
                if (p1 == 0.0) continue;
                const double p01 = p0 * p1;
                for (int x2 = 0; x2 < cells; ++x2) {
                    const double pr = p01 * dist.p[2][x2];
                    if (pr == 0.0) continue;
                    const int x[3] = {x0, x1, x2};
                    const int v[3] = {x0 / q, x1 / q, x2 / q};
                    const int y = dc.output(j, x[j], v[ia], v[ib]);
                    joint_yv[((static_cast<long long>(y) * q + v[0]) * q + v[1]) * q + v[2]] += pr;
                    joint_yx[static_cast<long long>(y) * cells + x[j]] += pr;
                }
            }
        }

        // H(Y_j | V_S) = H(Y_j, V_S) - sum_{i in S} H(V_i); the V_i are
        // independent so the subtracted term is exact.
        for (unsigned mask = 0; mask < 8; ++mask) {
            std::map<long long, double> marg;
            for (const auto& [key, pr] : joint_yv) {
                long long k = key;
                const int v2 = static_cast<int>(k % q);
                k /= q;
                const int v1 = static_cast<int>(k % q);
                k /= q;
                const int v0 = static_cast<int>(k % q);
                const long long y = k / q;
                long long mkey = y;
                if (mask & 1u) mkey = mkey * q + v0;
                if (mask & 2u) mkey = mkey * q + v1;
                if (mask & 4u) mkey = mkey * q + v2;
                marg[mkey] += pr;
            }
            double hv = 0.0;
            for (int i = 0; i < 3; ++i)
                if (mask & (1u << i)) hv += t.h_v[i];
            t.h_y_given_v[j][mask] = std::max(0.0, entropy_bits(marg) - hv);
        }

        std::map<long long, double> px;
        for (int x = 0; x < cells; ++x)
            if (dist.p[j][x] > 0.0) px[x] += dist.p[j][x];
        t.h_y_given_x[j] = std::max(0.0, entropy_bits(joint_yx) - entropy_bits(px));
    }
    return t;
}

bool check_invertibility(const DetChannel& dc, const ProductDistribution& dist) {
    const EntropyTable t = entropy_table(dc, dist);
    for (int j = 0; j < 3; ++j) {
        const auto [ia, ib] = DetChannel::interferers(j);
        if (std::abs(t.h_y_given_x[j] - t.h_v[ia] - t.h_v[ib]) > 1e-9) return false;
    }
    return true;
}

namespace {

// One inequality template of the R(1,2,3) family, 0-based: weights on
// (R_1, R_2, R_3) and right-hand side terms H(Y_recv | V_mask).
struct Ineq {
    int w[3];
    std::vector<std::pair<int, unsigned>> rhs;
};

const std::vector<Ineq>& base_inequalities() {
    static const std::vector<Ineq> kRows = {
        {{1, 0, 0}, {{0, 6}}},
        {{1, 1, 0}, {{0, 7}, {1, 4}}},
        {{1, 1, 0}, {{0, 5}, {1, 6}}},
        {{2, 1, 0}, {{0, 4}, {0, 7}, {1, 6}}},
        {{1, 1, 1}, {{0, 1}, {1, 6}, {2, 7}}},
        {{1, 1, 1}, {{0, 5}, {1, 3}, {2, 6}}},
        {{1, 1, 1}, {{0, 7}, {1, 1}, {2, 6}}},
        {{1, 1, 1}, {{0, 7}, {1, 7}, {2, 0}}},
        {{2, 1, 1}, {{0, 0}, {0, 7}, {1, 6}, {2, 7}}},
        {{2, 1, 1}, {{0, 1}, {0, 7}, {1, 6}, {2, 6}}},
        {{2, 1, 1}, {{0, 5}, {0, 2}, {1, 7}, {2, 6}}},
        {{2, 1, 1}, {{0, 7}, {0, 4}, {1, 3}, {2, 6}}},
        {{2, 1, 1}, {{0, 7}, {0, 4}, {1, 2}, {2, 7}}},
        {{2, 1, 1}, {{0, 7}, {0, 3}, {1, 6}, {2, 4}}},
        {{2, 1, 1}, {{0, 7}, {0, 7}, {1, 0}, {2, 6}}},
        {{2, 1, 1}, {{0, 7}, {0, 7}, {1, 2}, {2, 4}}},
        {{3, 1, 1}, {{0, 7}, {0, 7}, {0, 0}, {1, 6}, {2, 6}}},
        {{3, 1, 1}, {{0, 7}, {0, 7}, {0, 2}, {1, 6}, {2, 4}}},
        {{2, 2, 1}, {{0, 0}, {0, 5}, {1, 7}, {1, 7}, {2, 6}}},
        {{2, 2, 1}, {{0, 0}, {0, 7}, {1, 7}, {1, 6}, {2, 5}}},
        {{2, 2, 1}, {{0, 0}, {0, 7}, {1, 7}, {1, 7}, {2, 4}}},
        {{2, 2, 1}, {{0, 1}, {0, 7}, {1, 7}, {1, 6}, {2, 4}}},
        {{2, 2, 1}, {{0, 5}, {0, 5}, {1, 7}, {1, 2}, {2, 6}}},
        {{3, 2, 1}, {{0, 7}, {0, 7}, {0, 0}, {1, 7}, {1, 6}, {2, 4}}},
        {{3, 2, 1}, {{0, 7}, {0, 7}, {0, 0}, {1, 6}, {1, 6}, {2, 5}}},
        {{3, 2, 1}, {{0, 7}, {0, 7}, {0, 1}, {1, 6}, {1, 6}, {2, 4}}},
        {{3, 2, 1}, {{0, 7}, {0, 7}, {0, 7}, {1, 6}, {1, 0}, {2, 4}}},
        {{4, 2, 1}, {{0, 7}, {0, 7}, {0, 7}, {0, 0}, {1, 6}, {1, 6}, {2, 4}}},
    };
    return kRows;
}

unsigned permute_mask(unsigned mask, const std::array<int, 3>& perm) {
    unsigned out = 0;
    for (int b = 0; b < 3; ++b)
        if (mask & (1u << b)) out |= 1u << perm[b];
    return out;
}

bool same_row(const Halfspace& x, const Halfspace& y) {
    if (std::abs(x.b - y.b) > 1e-12) return false;
    for (std::size_t j = 0; j < x.a.size(); ++j)
        if (std::abs(x.a[j] - y.a[j]) > 1e-12) return false;
    return true;
}

} // namespace

Polytope theorem1_region(const EntropyTable& t) {
    static const std::array<std::array<int, 3>, 6> kPerms = {
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

    Polytope p = Polytope::empty_region(3);
    for (const auto& perm : kPerms) {
        for (const auto& ineq : base_inequalities()) {
            std::vector<double> a(3, 0.0);
            for (int i = 0; i < 3; ++i) a[perm[i]] = ineq.w[i];
            double b = 0.0;
            for (const auto& [recv, mask] : ineq.rhs)
                b += t.y_given_v(perm[recv], permute_mask(mask, perm));
            Halfspace h{std::move(a), b};
            bool dup = false;
            for (const auto& existing : p.halfspaces)
                if (same_row(existing, h)) {
                    dup = true;
                    break;
                }
            if (!dup) p.halfspaces.push_back(std::move(h));
        }
    }
    return p;
}

Polytope achievable_constraints(const EntropyTable& t) {
    // Variable order (R1p, R2p, R3p, R1c, R2c, R3c); template below is the
    // receiver-1 list, other receivers by transposing user indices.
    struct Row {
        bool own_private;
        unsigned common_mask; // bit i -> R_ic present (0-based users)
        unsigned cond_mask;
    };
    static const std::vector<Row> kTemplate = {
        {true, 0b111, 0}, {true, 0b011, 4}, {true, 0b101, 2}, {true, 0b110, 1},
        {true, 0b010, 5}, {true, 0b100, 3}, {true, 0b001, 6}, {true, 0b000, 7},
    };
    static const std::array<std::array<int, 3>, 3> kSwap = {
        {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}}};

    Polytope p = Polytope::empty_region(6);
    for (int r = 0; r < 3; ++r) {
        const auto& perm = kSwap[r];
        for (const auto& row : kTemplate) {
            std::vector<double> a(6, 0.0);
            if (row.own_private) a[perm[0]] = 1.0;
            for (int i = 0; i < 3; ++i)
                if (row.common_mask & (1u << i)) a[3 + perm[i]] = 1.0;
            p.add(std::move(a), t.y_given_v(perm[0], permute_mask(row.cond_mask, perm)));
        }
    }
    return p;
}

Polytope project_to_rates(const Polytope& p6) {
    if (p6.dim != 6) throw Error("project_to_rates: expected 6 variables");
    // substitute R_ic = R_i - R_ip; variables become (R1p, R2p, R3p, R1, R2, R3)
    Polytope q = Polytope::empty_region(6);
    for (const auto& h : p6.halfspaces) {
        std::vector<double> a(6, 0.0);
        for (int i = 0; i < 3; ++i) {
            a[3 + i] = h.a[3 + i];
            a[i] = h.a[i] - h.a[3 + i];
        }
        q.add(std::move(a), h.b);
    }
    for (int i = 0; i < 3; ++i) {
        // R_ic >= 0 becomes R_ip <= R_i
        std::vector<double> a(6, 0.0);
        a[i] = 1.0;
        a[3 + i] = -1.0;
        q.add(std::move(a), 0.0);
    }
    Polytope out = q;
    for (int step = 0; step < 3; ++step) out = fm_eliminate(out, 0);
    return out;
}

std::string EntropyTable::to_json() const {
    nlohmann::json j;
    j["q"] = q;
    for (int i = 0; i < 3; ++i) j["H(V" + std::to_string(i + 1) + ")"] = h_v[i];
    for (int r = 0; r < 3; ++r) {
        for (unsigned mask = 0; mask < 8; ++mask) {
            std::string key = "H(Y" + std::to_string(r + 1);
            if (mask != 0) {
                key += "|V";
                for (int b = 0; b < 3; ++b)
                    if (mask & (1u << b)) key += std::to_string(b + 1);
            }
            key += ")";
            j[key] = h_y_given_v[r][mask];
        }
        j["H(Y" + std::to_string(r + 1) + "|X" + std::to_string(r + 1) + ")"] =
            h_y_given_x[r];
    }
    return j.dump();
}

} // namespace simocap
