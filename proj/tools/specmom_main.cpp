// specmom — spectral moments of weighted random matrices with dependent
// entries, computed two ways: analytically (non-crossing pair partitions and
// tree integrals) and by Monte Carlo over sampled ensembles.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 tolerance failure
// in --check mode.

#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specmom/adopted.hpp"
#include "specmom/csv.hpp"
#include "specmom/ensembles.hpp"
#include "specmom/partitions.hpp"
#include "specmom/relations.hpp"
#include "specmom/spectra.hpp"
#include "specmom/tree_integrals.hpp"
#include "specmom/weights.hpp"

namespace {

using namespace specmom;

struct GlobalOpts {
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out;
    bool check = false;
    bool quiet = false;
};

void say(const GlobalOpts& g, const std::string& line) {
    if (!g.quiet) std::cout << line << "\n";
}

int check_gate(const GlobalOpts& g, bool ok, const std::string& what) {
    if (!g.check) return 0;
    if (ok) {
        say(g, "check: PASS " + what);
        return 0;
    }
    std::cout << "check: FAIL " << what << "\n";
    return 2;
}

std::string sequence_string(const AdoptedSequence& seq) {
    std::string s = "(";
    for (int i = 0; i < seq.k(); ++i) {
        if (i) s += ',';
        s += std::to_string(seq.labels[i]);
    }
    return s + ")";
}

std::string edges_string(const AdoptedGraph& g) {
    std::string s;
    for (const auto& [a, b] : g.edges) {
        if (!s.empty()) s += ',';
        s += '{' + std::to_string(a) + ',' + std::to_string(b) + '}';
    }
    return s;
}

int cmd_partitions(int k, const std::string& emit, const GlobalOpts& g) {
    const auto partitions = enumerate_nc_pair_partitions(k);
    bool all_verified = true;
    for (const auto& pi : partitions) {
        std::string line = pi.to_string();
        const AdoptedSequence seq = build_adopted_sequence(pi);
        all_verified = all_verified && verify_adopted(pi, seq);
        if (emit == "sequences") line += "  seq=" + sequence_string(seq);
        if (emit == "graphs") line += "  edges=" + edges_string(adopted_graph(seq));
        if (!g.quiet) std::cout << line << "\n";
    }
    say(g, "count=" + std::to_string(partitions.size()) + " catalan=" + std::to_string(catalan(k / 2)));
    return check_gate(g, static_cast<std::int64_t>(partitions.size()) == catalan(k / 2) && all_verified,
                      "partition count and adopted-sequence verification");
}

int cmd_phi(const std::string& weight_spec, int grid, double tol, const GlobalOpts& g) {
    const WeightFn w = parse_weight_spec(weight_spec);
    const PhiReport report = is_phi_constant(w, tol, grid);
    say(g, std::string("verdict ") + (report.constant_verdict ? "CONSTANT" : "NOT CONSTANT") +
               "  phi0=" + format_double(report.phi0) +
               "  max_deviation=" + format_double(report.max_deviation));
    if (!g.out.empty()) {
        CsvTable table;
        table.header = {"x", "phi", "phi0", "deviation"};
        for (int i = 0; i < report.grid_n; ++i) {
            const double x = (i + 0.5) / report.grid_n;
            table.rows.push_back({x, report.phi_values[i], report.phi0,
                                  std::abs(report.phi_values[i] - report.phi0)});
        }
        write_csv(g.out, table);
        say(g, "wrote " + g.out);
    }
    // Quadrature sanity: the grid phi0 must sit near the closed form.
    const double bound = 5.0 * std::max(1.0, w.sup_abs() * w.sup_abs()) / grid;
    return check_gate(g, std::abs(report.phi0 - phi0_exact(w)) <= bound, "phi0 quadrature agreement");
}

int cmd_theory(const std::string& weight_spec, int k_max, int grid, bool normalized,
               const GlobalOpts& g) {
    const WeightFn w = parse_weight_spec(weight_spec);
    const MomentTable table = moment_table(w, k_max, grid, normalized);
    CsvTable csv;
    csv.header = {"k", "mu_theory", "catalan", "gap"};
    for (const auto& [k, mu] : table.entries) {
        const double cat = k % 2 == 0 ? static_cast<double>(catalan(k / 2)) : 0.0;
        csv.rows.push_back({static_cast<double>(k), mu, cat, mu - cat});
        say(g, "k=" + std::to_string(k) + "  mu=" + format_double(mu) + "  catalan=" + format_double(cat) +
                   "  gap=" + format_double(mu - cat));
    }
    if (!g.out.empty()) {
        write_csv(g.out, csv);
        say(g, "wrote " + g.out);
    }
    if (!g.check) return 0;
    const double mu2 = theoretical_moment(2, w, grid, true);
    const double mu4 = theoretical_moment(4, w, grid, true);
    return check_gate(g, std::abs(mu2 - 1.0) <= 1e-3 && mu4 >= 2.0 - 1e-3,
                      "normalized mu_2 = 1 and mu_4 >= 2");
}

EnsembleSpec configure_ensemble(const std::string& text, int n, const std::string& dist,
                                const GlobalOpts& g) {
    EnsembleSpec spec = EnsembleSpec::parse(text);
    if (n > 0) spec.n = n;
    spec.seed = g.seed;
    if (dist == "gaussian")
        spec.entry_dist = EntryDist::gaussian;
    else if (dist == "rademacher")
        spec.entry_dist = EntryDist::rademacher;
    else if (!dist.empty())
        throw std::invalid_argument("unknown entry distribution '" + dist + "'");
    spec.validate();
    return spec;
}

int cmd_simulate(const std::string& ensemble, int n, int trials, int k_max, bool normalized,
                 int grid, const std::string& dist, const GlobalOpts& g) {
    const EnsembleSpec spec = configure_ensemble(ensemble, n, dist, g);
    const std::optional<WeightFn> w = spec.theory_weight();
    const double p0 = normalized && w ? phi0_exact(*w) : 0.0;
    MomentReport report = empirical_moments(spec, k_max, trials, p0, g.threads);

    for (auto& entry : report.entries) {
        if (w)
            entry.theory = theoretical_moment(entry.k, *w, grid, normalized);
        else  // slow_band: the limit is the semicircle law
            entry.theory = entry.k % 2 == 0 ? static_cast<double>(catalan(entry.k / 2)) : 0.0;
        entry.abs_err = std::abs(entry.mean - *entry.theory);
    }

    CsvTable csv;
    csv.header = {"k", "theory", "empirical_mean", "empirical_var", "abs_err"};
    for (const auto& e : report.entries) {
        csv.rows.push_back({static_cast<double>(e.k), *e.theory, e.mean, e.variance, e.abs_err});
        say(g, "k=" + std::to_string(e.k) + "  theory=" + format_double(*e.theory) +
                   "  mean=" + format_double(e.mean) + "  var=" + format_double(e.variance) +
                   "  abs_err=" + format_double(e.abs_err));
    }
    if (!g.out.empty()) {
        write_csv(g.out, csv);
        say(g, "wrote " + g.out);
    }

    bool ok = true;
    for (const auto& e : report.entries) {
        if (e.k % 2 == 0)
            ok = ok && e.abs_err <= 0.06 * std::max(1.0, std::abs(*e.theory));
        else
            ok = ok && std::abs(e.mean) <= 0.1;
    }
    return check_gate(g, ok, "empirical moments within tolerance of theory");
}

int cmd_spectrum(const std::string& ensemble, int n, int trials, int bins, double lo, double hi,
                 const std::string& dist, const GlobalOpts& g) {
    const EnsembleSpec spec = configure_ensemble(ensemble, n, dist, g);
    std::vector<double> pooled;
    for (int t = 0; t < trials; ++t) {
        const SpectralSample s = eigenvalues(sample_matrix(spec, t));
        pooled.insert(pooled.end(), s.eigenvalues.begin(), s.eigenvalues.end());
    }
    Eigen::ArrayXd eigs = Eigen::Map<Eigen::ArrayXd>(pooled.data(), static_cast<Eigen::Index>(pooled.size()));
    const double ks = ks_distance(eigs);
    say(g, "eigenvalues=" + std::to_string(pooled.size()) + "  ks=" + format_double(ks));

    CsvTable csv;
    csv.header = {"bin_left", "bin_right", "empirical_density", "semicircle_density"};
    for (const auto& bin : histogram(eigs, bins, lo, hi)) {
        const double mid = 0.5 * (bin.left + bin.right);
        csv.rows.push_back({bin.left, bin.right, bin.density, semicircle_density(mid)});
    }
    if (!g.out.empty()) {
        write_csv(g.out, csv);
        say(g, "wrote " + g.out);
    }
    return check_gate(g, ks <= 0.1, "Kolmogorov distance to the semicircle <= 0.1");
}

int cmd_variance(const std::string& ensemble, const std::vector<int>& ns, int k, int trials,
                 const std::string& dist, const GlobalOpts& g) {
    EnsembleSpec family = configure_ensemble(ensemble, ns.empty() ? 0 : ns.front(), dist, g);
    const VarianceDecay decay = variance_decay(family, ns, k, trials, g.threads);
    CsvTable csv;
    csv.header = {"n", "scale", "variance"};
    for (const auto& row : decay.rows) {
        csv.rows.push_back({static_cast<double>(row.n), static_cast<double>(row.scale), row.variance});
        say(g, "n=" + std::to_string(row.n) + "  scale=" + std::to_string(row.scale) +
                   "  variance=" + format_double(row.variance));
    }
    say(g, decay.degenerate ? std::string("slope=-inf (degenerate: zero variance)")
                            : "slope=" + format_double(decay.slope));
    if (!g.out.empty()) {
        write_csv(g.out, csv);
        say(g, "wrote " + g.out);
    }
    return check_gate(g, decay.degenerate || decay.slope <= -0.5, "variance decays (slope <= -0.5)");
}

EquivalenceRelation make_relation(const std::string& name, int n) {
    if (name == "wigner") return wigner_relation(n);
    if (name == "block") return block_relation(n / 2, false);
    if (name == "block-minus") return block_relation(n / 2, true);
    if (name.rfind("table:", 0) == 0) return relation_from_table(name.substr(6));
    throw std::invalid_argument("unknown relation '" + name + "' (expected wigner|block|block-minus|table:<path>)");
}

int cmd_relation_check(const std::string& relation, int n, std::optional<int> band,
                       const std::vector<int>& sweep, const GlobalOpts& g) {
    if (sweep.empty()) {
        const ConditionReport r = condition_counts(make_relation(relation, n),
                                                   band ? std::optional<int>(*band) : std::nullopt);
        say(g, "n=" + std::to_string(r.n) + "  c1_max=" + std::to_string(r.c1_max) +
                   "  c2_max=" + std::to_string(r.c2_max) + "  c3_count=" + std::to_string(r.c3_count) +
                   "  c1_ratio=" + format_double(r.c1_ratio) + "  c3_ratio=" + format_double(r.c3_ratio));
        return check_gate(g, r.c2_max <= 64, "bounded class condition (c2_max <= 64)");
    }
    const GrowthReport report = growth_report([&](int m) { return make_relation(relation, m); }, sweep);
    CsvTable csv;
    csv.header = {"n", "c1_max", "c3_count", "c1_ratio", "c3_ratio"};
    for (const auto& row : report.rows) {
        csv.rows.push_back({static_cast<double>(row.n), static_cast<double>(row.c1_max),
                            static_cast<double>(row.c3_count), row.c1_ratio, row.c3_ratio});
        say(g, "n=" + std::to_string(row.n) + "  c1_ratio=" + format_double(row.c1_ratio) +
                   "  c3_ratio=" + format_double(row.c3_ratio));
    }
    say(g, std::string("c1 strictly decreasing: ") + (report.c1_strictly_decreasing ? "yes" : "no"));
    if (!g.out.empty()) {
        write_csv(g.out, csv);
        say(g, "wrote " + g.out);
    }
    return check_gate(g, report.c1_strictly_decreasing && report.c3_nonincreasing,
                      "dependence ratios shrink with n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral moments of weighted random matrices: partition combinatorics, "
                 "tree-integral theory, and Monte Carlo cross-validation"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("--seed", g.seed, "base seed for all sampling");
    app.add_option("--threads", g.threads, "worker threads (0 = SPECMOM_THREADS env or hardware)");
    app.add_option("--out", g.out, "write results as CSV to this path");
    app.add_flag("--check", g.check, "verify embedded thresholds; exit 2 on failure");
    app.add_flag("--quiet", g.quiet, "suppress informational output");

    int k = 4, k_max = 8, grid = 2048, n = 0, trials = 8, bins = 40;
    double tol = 1e-3, lo = -2.5, hi = 2.5;
    bool normalized = false;
    std::string weight_spec = "constant:1", ensemble = "wigner", emit, dist, relation = "wigner";
    std::vector<int> ns, sweep;
    std::optional<int> band;

    auto* partitions = app.add_subcommand("partitions", "enumerate non-crossing pair partitions");
    partitions->add_option("--k", k, "even partition size")->required();
    partitions->add_option("--emit", emit, "additionally print 'sequences' or 'graphs'")
        ->check(CLI::IsMember({"", "sequences", "graphs"}));

    auto* phi_cmd = app.add_subcommand("phi", "kernel profile phi(x) and the constancy verdict");
    phi_cmd->add_option("--weight", weight_spec, "constant:c | band:rho | periodic:rho | table:<path>")->required();
    phi_cmd->add_option("--grid", grid, "midpoint grid size");
    phi_cmd->add_option("--tol", tol, "constancy tolerance");

    auto* theory = app.add_subcommand("theory", "theoretical moments from tree integrals");
    theory->add_option("--k-max", k_max, "highest moment order");
    theory->add_option("--weight", weight_spec, "weight spec")->required();
    theory->add_option("--grid", grid, "midpoint grid size");
    theory->add_flag("--normalized", normalized, "divide mu_k by phi0^{k/2}");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo trace-power moments vs theory");
    simulate->add_option("--ensemble", ensemble, "shorthand, inline JSON, or @file.json")->required();
    simulate->add_option("--n", n, "matrix dimension")->required();
    simulate->add_option("--trials", trials, "number of trials");
    simulate->add_option("--k-max", k_max, "highest moment order");
    simulate->add_option("--grid", grid, "grid for the theory column");
    simulate->add_option("--dist", dist, "rademacher | gaussian");
    simulate->add_flag("--normalized", normalized, "rescale by 1/sqrt(phi0)");

    auto* spectrum = app.add_subcommand("spectrum", "pooled eigenvalue histogram vs the semicircle");
    spectrum->add_option("--ensemble", ensemble, "ensemble spec")->required();
    spectrum->add_option("--n", n, "matrix dimension")->required();
    spectrum->add_option("--trials", trials, "matrices to pool");
    spectrum->add_option("--bins", bins, "histogram bins");
    spectrum->add_option("--lo", lo, "histogram range lower edge");
    spectrum->add_option("--hi", hi, "histogram range upper edge");
    spectrum->add_option("--dist", dist, "rademacher | gaussian");

    auto* variance = app.add_subcommand("variance", "variance decay of Y^(k) across dimensions");
    variance->add_option("--ensemble-family", ensemble, "ensemble spec; n is swept")->required();
    variance->add_option("--ns", ns, "dimensions to sweep")->required()->delimiter(',');
    variance->add_option("--k", k, "moment order");
    variance->add_option("--trials", trials, "trials per dimension");
    variance->add_option("--dist", dist, "rademacher | gaussian");

    auto* rel = app.add_subcommand("relation", "equivalence-relation audits");
    auto* rel_check = rel->add_subcommand("check", "count the dependence conditions");
    rel_check->add_option("--relation", relation, "wigner | block | block-minus | table:<path>");
    rel_check->add_option("--n", n, "index range");
    rel_check->add_option("--band", band, "use b^2 as the ratio denominator");
    rel_check->add_option("--sweep", sweep, "sizes for a growth sweep")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints the message or help text
        return code == 0 ? 0 : 1;
    }

    try {
        if (partitions->parsed()) return cmd_partitions(k, emit, g);
        if (phi_cmd->parsed()) return cmd_phi(weight_spec, grid, tol, g);
        if (theory->parsed()) return cmd_theory(weight_spec, k_max, grid, normalized, g);
        if (simulate->parsed()) return cmd_simulate(ensemble, n, trials, k_max, normalized, grid, dist, g);
        if (spectrum->parsed()) return cmd_spectrum(ensemble, n, trials, bins, lo, hi, dist, g);
        if (variance->parsed()) return cmd_variance(ensemble, ns, k, trials, dist, g);
        if (rel->parsed()) {
            if (!rel_check->parsed()) throw std::invalid_argument("relation: expected the 'check' subcommand");
            if (n <= 0 && sweep.empty()) throw std::invalid_argument("relation check: --n or --sweep required");
            return cmd_relation_check(relation, n, band, sweep, g);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
