// simocap command line tool: sweep drivers producing CSV/JSON artifacts for
// the rate bounds, GDOF curves, gap scans, strong-interference checks and
// deterministic-channel region comparisons.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "simocap/bounds.hpp"
#include "simocap/channel.hpp"
#include "simocap/detchan.hpp"
#include "simocap/gdof.hpp"
#include "simocap/polytope.hpp"
#include "simocap/rates.hpp"
#include "simocap/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 2;
constexpr int kExitUsage = 64;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < header.size(); ++i)
            os << header[i] << (i + 1 < header.size() ? "," : "");
        os << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << row[i] << (i + 1 < row.size() ? "," : "");
            os << '\n';
        }
        return os.str();
    }

    std::string to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& row : rows) {
            nlohmann::json obj;
            for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = row[i];
            arr.push_back(obj);
        }
        return arr.dump() + "\n";
    }
};

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw simocap::Error("cannot open output file: " + path);
    os << content;
    if (!os) throw simocap::Error("write failed: " + path);
}

std::string emit(const Table& t, const std::string& format) {
    return format == "json" ? t.to_json() : t.to_csv();
}

std::vector<std::uint64_t> resolve_seeds(const std::string& seed_list, int num_seeds) {
    if (!seed_list.empty()) return simocap::parse_seed_list(seed_list);
    std::vector<std::uint64_t> seeds;
    for (int s = 0; s < num_seeds; ++s) seeds.push_back(static_cast<std::uint64_t>(s + 1));
    return seeds;
}

// ---------------------------------------------------------------------------
// gdof-curve

int cmd_gdof_curve(int n, const std::string& alpha_spec, const std::string& rho_pair_spec,
                   const std::string& seed_list, int num_seeds, const std::string& out,
                   const std::string& format) {
    const auto alphas = simocap::parse_grid(alpha_spec);
    const auto pair_vals = simocap::parse_grid(rho_pair_spec);
    if (alphas.empty() || pair_vals.size() != 2) {
        std::cerr << "gdof-curve: need a nonempty --alpha grid and a 2-entry --log2-rho pair\n";
        return kExitUsage;
    }
    const std::pair<double, double> lp{pair_vals[0], pair_vals[1]};
    const auto seeds = resolve_seeds(seed_list, num_seeds);

    Table t;
    t.header = {"alpha", "d_theorem", "d_tin", "d_orthogonal", "d_numeric_inner",
                "d_numeric_outer"};
    t.rows.resize(alphas.size());
    simocap::parallel_for(alphas.size(), [&](std::size_t i) {
        const double a = alphas[i];
        const double di = simocap::estimate_gdof_numeric(
            [](const simocap::SymmetricSimoChannel& ch) { return simocap::inner_symmetric(ch); },
            n, a, lp, seeds);
        const double douter = simocap::estimate_gdof_numeric(
            [](const simocap::SymmetricSimoChannel& ch) { return simocap::outer_symmetric(ch); },
            n, a, lp, seeds);
        t.rows[i] = {fmt(a),
                     fmt(simocap::gdof_theorem(n, a)),
                     fmt(simocap::gdof_tin(a)),
                     fmt(simocap::gdof_orthogonal(n)),
                     fmt(di),
                     fmt(douter)};
    });
    write_output(out, emit(t, format));
    return kExitOk;
}

// ---------------------------------------------------------------------------
// gap-scan

int cmd_gap_scan(const std::string& rho_spec, const std::string& alpha_spec,
                 const std::string& csq_spec, const std::string& seed_list, int num_seeds,
                 const std::string& out, const std::string& format) {
    simocap::GapGridSpec grid;
    grid.log2_rhos = simocap::parse_grid(rho_spec);
    grid.alphas = simocap::parse_grid(alpha_spec);
    grid.c_sqs = simocap::parse_grid(csq_spec);
    grid.seeds = resolve_seeds(seed_list, num_seeds);
    if (grid.log2_rhos.empty() || grid.alphas.empty() || grid.c_sqs.empty() ||
        grid.seeds.empty()) {
        std::cerr << "gap-scan: empty grid\n";
        return kExitUsage;
    }
    const simocap::GapReport report = simocap::gap_scan(grid);
    write_output(out, format == "json" ? report.to_json() + "\n" : report.to_csv());
    if (!report.ok()) {
        const auto& w = report.rows[report.violations.front()];
        std::cerr << "certificate violated at log2_rho=" << w.log2_rho << " alpha=" << w.alpha
                  << " c_sq=" << w.c_sq << " seed=" << w.seed << "\n";
        return kExitViolation;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// strong-check

simocap::GeneralSimoChannel random_strong_channel(simocap::Rng& rng, double cross_min,
                                                  double cross_max, double max_csq) {
    simocap::GeneralSimoChannel ch;
    ch.K = 3;
    ch.N = 2;
    ch.normalized_direct = true;
    ch.P.resize(3);
    ch.H.assign(3, std::vector<simocap::ComplexVector>(3));
    auto unit = [&rng] {
        simocap::ComplexVector v(2);
        double nrm;
        do {
            v[0] = rng.complex_gaussian();
            v[1] = rng.complex_gaussian();
            nrm = v.norm();
        } while (nrm < 1e-6);
        v *= 1.0 / nrm;
        return v;
    };
    for (std::size_t i = 0; i < 3; ++i) ch.P[i] = 0.5 + 1.5 * rng.uniform();
    for (std::size_t j = 0; j < 3; ++j) {
        ch.H[j][j] = unit();
        const std::size_t u = (j + 1) % 3, v = (j + 2) % 3;
        for (;;) {
            const simocap::ComplexVector du = unit(), dv = unit();
            if (std::norm(simocap::inner(du, dv)) > max_csq) continue;
            ch.H[j][u] = du * (cross_min + (cross_max - cross_min) * rng.uniform());
            ch.H[j][v] = dv * (cross_min + (cross_max - cross_min) * rng.uniform());
            break;
        }
    }
    return ch;
}

int cmd_strong_check(const std::string& channel_file, int random_count, std::uint64_t seed,
                     double cross_min, double cross_max, double max_csq, const std::string& out,
                     const std::string& format) {
    std::vector<simocap::GeneralSimoChannel> channels;
    if (!channel_file.empty()) {
        std::ifstream is(channel_file);
        if (!is) throw simocap::Error("cannot open channel file: " + channel_file);
        std::stringstream ss;
        ss << is.rdbuf();
        channels.push_back(simocap::GeneralSimoChannel::from_json(ss.str()));
    } else {
        simocap::Rng rng(seed);
        for (int i = 0; i < random_count; ++i)
            channels.push_back(random_strong_channel(rng, cross_min, cross_max, max_csq));
    }
    if (channels.empty()) {
        std::cerr << "strong-check: no channels\n";
        return kExitUsage;
    }

    Table t;
    t.header = {"index", "a1", "a2", "a3", "conditions_hold", "max_support_diff",
                "established"};
    t.rows.resize(channels.size());
    const auto dirs = simocap::make_directions(3);
    bool all_ok = true;
    for (std::size_t i = 0; i < channels.size(); ++i) {
        const auto& ch = channels[i];
        const auto [a, outer_region] = simocap::strong_mac_outer(ch);
        const simocap::Polytope inner_region = simocap::decode_all_region(ch);
        const bool cond = simocap::corollary_conditions(ch);
        const simocap::EqualityReport eq =
            simocap::polytope_equal(inner_region, outer_region, dirs, 1e-6);
        const double diff = std::abs(eq.support_p - eq.support_q);
        const bool established = cond && eq.equal;
        if (cond && !eq.equal) all_ok = false;
        t.rows[i] = {std::to_string(i), fmt(a.a1), fmt(a.a2), fmt(a.a3),
                     cond ? "1" : "0",  fmt(diff), established ? "1" : "0"};
    }
    write_output(out, emit(t, format));
    return all_ok ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------
// det-region

int cmd_det_region(int q, int dirichlet_count, std::uint64_t seed, const std::string& out,
                   const std::string& format) {
    if (q != 2 && q != 3) {
        std::cerr << "det-region: q must be 2 or 3\n";
        return kExitUsage;
    }
    const simocap::DetChannel dc = simocap::build_canonical_det_channel(q);
    simocap::Rng rng(seed);

    std::vector<std::pair<std::string, simocap::ProductDistribution>> dists;
    dists.emplace_back("uniform", simocap::uniform_distribution(q));
    dists.emplace_back("point_mass", simocap::point_mass_distribution(q, {0, 0, 0}));
    for (int i = 0; i < dirichlet_count; ++i)
        dists.emplace_back("dirichlet_" + std::to_string(i),
                           simocap::dirichlet_distribution(q, rng));

    const auto dirs = simocap::make_directions(3);
    const std::vector<double> sum_dir{1.0, 1.0, 1.0};

    Table t;
    t.header = {"distribution", "equal", "worst_dir", "support_thm1", "support_fm",
                "sum_rate_support"};
    nlohmann::json records = nlohmann::json::array();
    bool all_equal = true;

    for (const auto& [label, dist] : dists) {
        const simocap::EntropyTable table = simocap::entropy_table(dc, dist);
        const simocap::Polytope thm1 = simocap::theorem1_region(table);
        const simocap::Polytope projected =
            simocap::project_to_rates(simocap::achievable_constraints(table));
        const simocap::EqualityReport eq = simocap::polytope_equal(projected, thm1, dirs, 1e-6);
        if (!eq.equal) all_equal = false;
        const double sum_rate = simocap::support(thm1, sum_dir);

        std::ostringstream wd;
        for (std::size_t k = 0; k < eq.witness_dir.size(); ++k)
            wd << (k ? ";" : "") << fmt(eq.witness_dir[k]);
        t.rows.push_back({label, eq.equal ? "1" : "0", wd.str(), fmt(eq.support_q),
                          fmt(eq.support_p), fmt(sum_rate)});

        if (format == "json") {
            nlohmann::json rec;
            rec["distribution"] = label;
            rec["equal"] = eq.equal;
            rec["worst_dir"] = eq.witness_dir;
            rec["support_fm"] = eq.support_p;
            rec["support_thm1"] = eq.support_q;
            rec["sum_rate_support"] = sum_rate;
            rec["entropy_table"] = nlohmann::json::parse(table.to_json());
            rec["theorem1_region"] = nlohmann::json::parse(thm1.to_json());
            rec["fm_region"] = nlohmann::json::parse(projected.to_json());
            records.push_back(rec);
        }
    }

    write_output(out, format == "json" ? records.dump() + "\n" : t.to_csv());
    return all_equal ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------
// rates

int cmd_rates(int n, const std::string& rho_spec, const std::string& alpha_spec,
              std::uint64_t seed, const std::string& out, const std::string& format) {
    const auto rhos = simocap::parse_grid(rho_spec);
    const auto alphas = simocap::parse_grid(alpha_spec);
    if (rhos.empty() || alphas.empty()) {
        std::cerr << "rates: empty grid\n";
        return kExitUsage;
    }

    struct Point {
        double log2_rho, alpha;
    };
    std::vector<Point> points;
    for (double r : rhos)
        for (double a : alphas) points.push_back({r, a});

    Table t;
    t.header = {"log2_rho",    "alpha",       "tin",         "hk_private",
                "hk_common",   "hk_total",    "decode_all",  "inner",
                "single_user", "two_user_min", "many_to_one_sym", "new_bound_sym",
                "outer"};
    t.rows.resize(points.size());
    simocap::parallel_for(points.size(), [&](std::size_t i) {
        const auto [lr, a] = points[i];
        const simocap::SymmetricSimoChannel ch =
            simocap::generate_symmetric(n, std::exp2(lr), a, seed);
        const double tin = simocap::tin_rate(ch);
        const double hk_p = simocap::hk_private_rate(ch);
        const double hk_c = simocap::hk_common_symmetric_rate(ch);
        const double da = simocap::decode_all_symmetric_rate(ch);
        const double inner = std::max({tin, hk_p + hk_c, da});
        double two_user_min = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < ch.K(); ++j)
            for (std::size_t k = 0; k < ch.K(); ++k)
                if (j != k) two_user_min = std::min(two_user_min, simocap::two_user_bound(ch, j, k));
        const simocap::GeneralSimoChannel g = ch.strong_form();
        double mto = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < ch.K(); ++r)
            mto = std::min(mto, simocap::many_to_one_bound(g, r) / static_cast<double>(ch.K()));
        t.rows[i] = {fmt(lr),
                     fmt(a),
                     fmt(tin),
                     fmt(hk_p),
                     fmt(hk_c),
                     fmt(hk_p + hk_c),
                     fmt(da),
                     fmt(inner),
                     fmt(simocap::single_user_bound(ch)),
                     fmt(two_user_min),
                     fmt(mto),
                     fmt(simocap::symmetric_new_bound(ch)),
                     fmt(simocap::outer_symmetric(ch))};
    });
    write_output(out, emit(t, format));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rate bounds, GDOF and capacity-region tools for the N+1 user 1xN SIMO "
                 "Gaussian interference channel"};
    app.require_subcommand(1);

    std::string out, format = "csv";
    app.add_option("--out", out, "Output path ('-' or empty for stdout)")->capture_default_str();
    app.add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    // gdof-curve
    auto* gdof_cmd = app.add_subcommand("gdof-curve", "Analytic and numeric GDOF vs alpha");
    gdof_cmd->fallthrough();
    int n = 2;
    std::string alpha_spec = "0.1:2.0:0.1";
    std::string rho_pair = "40,60";
    std::string seed_list;
    int num_seeds = 5;
    gdof_cmd->add_option("--n", n, "Antennas per receiver (K = N+1 users)")->required();
    gdof_cmd->add_option("--alpha", alpha_spec, "Alpha grid (list or start:stop:step)")
        ->capture_default_str();
    gdof_cmd->add_option("--log2-rho", rho_pair, "Slope pair, two log2(SNR) values")
        ->capture_default_str();
    gdof_cmd->add_option("--seeds", seed_list, "Explicit comma-separated seeds");
    gdof_cmd->add_option("--num-seeds", num_seeds, "Seed count when --seeds absent")
        ->capture_default_str();

    // gap-scan
    auto* gap_cmd = app.add_subcommand("gap-scan", "Theorem-style O(1) gap certificate scan");
    gap_cmd->fallthrough();
    std::string gap_rho = "20,40";
    std::string gap_alpha = "0.1:2.0:0.1";
    std::string gap_csq = "0,0.5,0.9,0.99";
    std::string gap_seeds;
    int gap_num_seeds = 5;
    gap_cmd->add_option("--log2-rho", gap_rho, "log2(SNR) grid")->capture_default_str();
    gap_cmd->add_option("--alpha", gap_alpha, "alpha grid")->capture_default_str();
    gap_cmd->add_option("--c-sq", gap_csq, "|c|^2 grid for the interferer correlation")
        ->capture_default_str();
    gap_cmd->add_option("--seeds", gap_seeds, "Explicit seeds");
    gap_cmd->add_option("--num-seeds", gap_num_seeds, "Seed count when --seeds absent")
        ->capture_default_str();

    // strong-check
    auto* strong_cmd =
        app.add_subcommand("strong-check", "Strong-interference MAC outer bound and capacity check");
    strong_cmd->fallthrough();
    std::string channel_file;
    int random_count = 100;
    std::uint64_t strong_seed = 1;
    double cross_min = 1.2, cross_max = 3.0, max_csq = 0.2;
    strong_cmd->add_option("--channel", channel_file, "Channel JSON file (K=3, N=2)");
    strong_cmd->add_option("--random", random_count, "Number of random channels")
        ->capture_default_str();
    strong_cmd->add_option("--seed", strong_seed, "Seed for random channels")
        ->capture_default_str();
    strong_cmd->add_option("--cross-min", cross_min, "Min cross-link norm")->capture_default_str();
    strong_cmd->add_option("--cross-max", cross_max, "Max cross-link norm")->capture_default_str();
    strong_cmd->add_option("--max-csq", max_csq, "Max |c|^2 between cross links")
        ->capture_default_str();

    // det-region
    auto* det_cmd =
        app.add_subcommand("det-region", "Deterministic channel: FM projection vs region family");
    det_cmd->fallthrough();
    int q = 2;
    int dirichlet_count = 10;
    std::uint64_t det_seed = 1;
    det_cmd->add_option("--q", q, "Alphabet modulus (2 or 3)")->capture_default_str();
    det_cmd->add_option("--dists", dirichlet_count, "Number of Dirichlet draws")
        ->capture_default_str();
    det_cmd->add_option("--seed", det_seed, "Seed for Dirichlet draws")->capture_default_str();

    // rates
    auto* rates_cmd = app.add_subcommand("rates", "Inner and outer symmetric-rate table");
    rates_cmd->fallthrough();
    int rates_n = 2;
    std::string rates_rho = "20,30,40";
    std::string rates_alpha = "0.1:2.0:0.1";
    std::uint64_t rates_seed = 1;
    rates_cmd->add_option("--n", rates_n, "Antennas per receiver")->required();
    rates_cmd->add_option("--log2-rho", rates_rho, "log2(SNR) grid")->capture_default_str();
    rates_cmd->add_option("--alpha", rates_alpha, "alpha grid")->capture_default_str();
    rates_cmd->add_option("--seed", rates_seed, "Channel direction seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gdof_cmd->parsed())
            return cmd_gdof_curve(n, alpha_spec, rho_pair, seed_list, num_seeds, out, format);
        if (gap_cmd->parsed())
            return cmd_gap_scan(gap_rho, gap_alpha, gap_csq, gap_seeds, gap_num_seeds, out,
                                format);
        if (strong_cmd->parsed())
            return cmd_strong_check(channel_file, random_count, strong_seed, cross_min, cross_max,
                                    max_csq, out, format);
        if (det_cmd->parsed()) return cmd_det_region(q, dirichlet_count, det_seed, out, format);
        if (rates_cmd->parsed())
            return cmd_rates(rates_n, rates_rho, rates_alpha, rates_seed, out, format);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const simocap::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
