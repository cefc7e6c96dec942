// Acceptance suite: twelve end-to-end criteria covering the combinatorics,
// the tree-integral theory, the Monte Carlo ensembles, and the dependence
// audits.  One PASS/FAIL line per criterion; the exit code is the number of
// failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "specmom/adopted.hpp"
#include "specmom/ensembles.hpp"
#include "specmom/partitions.hpp"
#include "specmom/relations.hpp"
#include "specmom/rng.hpp"
#include "specmom/spectra.hpp"
#include "specmom/tree_integrals.hpp"
#include "specmom/weights.hpp"

using namespace specmom;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int id, bool ok, const std::string& what, double elapsed) {
    std::printf("%s criterion %2d: %s (%.1f s)\n", ok ? "PASS" : "FAIL", id, what.c_str(), elapsed);
    std::fflush(stdout);
    if (!ok) ++failures;
}

void criterion(int id, const std::string& what, const std::function<bool()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception& e) {
        std::printf("     criterion %2d threw: %s\n", id, e.what());
    }
    report(id, ok, what, seconds_since(t0));
}

bool within(double value, double lo, double hi) { return value >= lo && value <= hi; }

// --- 1: exact combinatorics ------------------------------------------------
bool combinatorics_exactness() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::int64_t expected[] = {1, 2, 5, 14, 42, 132};
    bool ok = true;
    for (int k = 2; k <= 12; k += 2) {
        const auto partitions = enumerate_nc_pair_partitions(k);
        ok = ok && static_cast<std::int64_t>(partitions.size()) == expected[k / 2 - 1];
        for (const auto& pi : partitions) {
            const AdoptedSequence seq = build_adopted_sequence(pi);
            const AdoptedGraph g = adopted_graph(seq);
            ok = ok && verify_adopted(pi, seq) && g.node_count == k / 2 + 1 &&
                 static_cast<int>(g.edges.size()) == k / 2 && g.is_tree();
        }
    }
    return ok && seconds_since(t0) < 1.0;
}

// --- 2: Wigner theory equals the Catalan numbers ---------------------------
bool wigner_theory() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (int k = 1; k <= 12; ++k) {
        const double mu = theoretical_moment(k, WeightFn::constant(1.0), 2048);
        const double target = k % 2 == 0 ? static_cast<double>(catalan(k / 2)) : 0.0;
        ok = ok && std::abs(mu - target) <= 1e-9;
    }
    return ok && seconds_since(t0) < 5.0;
}

// --- 3: periodic band theory ------------------------------------------------
bool periodic_band_theory() {
    bool ok = true;
    for (double rho : {0.1, 0.25, 0.4}) {
        const WeightFn w = WeightFn::periodic_band(rho);
        const SquaredWeightKernel kernel(w, 2048);
        for (int k = 2; k <= 8; k += 2) {
            for (const auto& pi : enumerate_nc_pair_partitions(k))
                ok = ok && std::abs(j_alpha(pi, kernel) - std::pow(2 * rho, k / 2)) <= 1e-4;
            const double mu = theoretical_moment(k, w, 2048, /*normalized=*/true);
            ok = ok && std::abs(mu - static_cast<double>(catalan(k / 2))) <= 1e-3;
        }
    }
    return ok;
}

// --- 4: the proportional band breaks the semicircle law --------------------
bool band_scl_failure() {
    const double mu4 = theoretical_moment(4, WeightFn::band(0.25), 2048, /*normalized=*/true);
    const double analytic = 2.0680272108843537;  // 2 (4r^2 - 10r^3/3) / (2r - r^2)^2 at r = 1/4
    return std::abs(mu4 - analytic) <= 0.01 && mu4 > 2.05;
}

// --- 5: elimination route vs direct nested summation ------------------------
bool oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<WeightFn> weights{WeightFn::constant(1.0)};
    for (double rho : {0.1, 0.25, 0.4}) {
        weights.push_back(WeightFn::band(rho));
        weights.push_back(WeightFn::periodic_band(rho));
    }
    bool ok = true;
    for (const WeightFn& w : weights) {
        const SquaredWeightKernel kernel(w, 64);
        for (int k = 2; k <= 6; k += 2)
            for (const auto& pi : enumerate_nc_pair_partitions(k))
                ok = ok && std::abs(j_alpha(pi, kernel) - j_alpha_bruteforce(pi, w, 64)) <= 5e-3;
    }
    return ok && seconds_since(t0) < 30.0;
}

bool moment_window(const MomentReport& r, int k, double lo, double hi) {
    return within(r.entries[k - 1].mean, lo, hi);
}

void print_moment_detail(int id, const MomentReport& r) {
    std::printf("     criterion %2d detail: Y2 %.4f  Y3 %+.4f  Y4 %.4f", id, r.entries[1].mean,
                r.entries[2].mean, r.entries[3].mean);
    if (r.entries.size() >= 6)
        std::printf("  Y5 %+.4f  Y6 %.4f", r.entries[4].mean, r.entries[5].mean);
    std::printf("\n");
}

// --- 6: Monte Carlo Wigner ---------------------------------------------------
bool monte_carlo_wigner() {
    const auto t0 = std::chrono::steady_clock::now();
    const MomentReport r = empirical_moments(EnsembleSpec::wigner(512, 20160201), 6, 32);
    print_moment_detail(6, r);
    const bool ok = moment_window(r, 2, 0.95, 1.05) && moment_window(r, 4, 1.9, 2.1) &&
                    moment_window(r, 6, 4.7, 5.3) && std::abs(r.entries[2].mean) <= 0.1 &&
                    std::abs(r.entries[4].mean) <= 0.1;
    return ok && seconds_since(t0) < 120.0;
}

// --- 7: block matrices (minus variant) ---------------------------------------
bool block_matrices() {
    const auto t0 = std::chrono::steady_clock::now();
    EnsembleSpec spec = EnsembleSpec::wigner(512, 20160202);
    spec.block_mode = BlockMode::minus;
    const MomentReport r = empirical_moments(spec, 6, 32);
    print_moment_detail(7, r);
    const bool ok = moment_window(r, 2, 0.95, 1.05) && moment_window(r, 4, 1.9, 2.1) &&
                    moment_window(r, 6, 4.7, 5.3) && std::abs(r.entries[2].mean) <= 0.1 &&
                    std::abs(r.entries[4].mean) <= 0.1;
    return ok && seconds_since(t0) < 120.0;
}

// --- 8: slow-growing band width ----------------------------------------------
// Note: at N = 1024 and b = 128 the hard band edges leave a deficit of order
// b/N = 1/8, and the exact expectation is E[Y4] = 2 - (5/3) b/N + O(b^2/N^2)
// = 1.8012; it converges to 2 only like N^{-0.3} along b = N^0.7.  The
// window below is therefore out of reach at this dimension; the measured
// value is printed for the record.
bool slow_band() {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::slow_band;
    spec.beta = 0.7;
    spec.n = 1024;
    spec.seed = 20160203;
    if (spec.band_width() != 128) return false;
    const MomentReport r = empirical_moments(spec, 4, 32);
    std::printf("     criterion  8 detail: measured Y4 %.4f vs exact finite-N expectation 1.8012 "
                "(edge deficit 5/3 * b/N at b/N = 1/8)\n",
                r.entries[3].mean);
    return moment_window(r, 4, 1.85, 2.15);
}

// --- 9: variance decay --------------------------------------------------------
bool variance_decay_experiment() {
    const auto t0 = std::chrono::steady_clock::now();
    const VarianceDecay wig =
        variance_decay(EnsembleSpec::wigner(0, 20160204), {64, 128, 256, 512}, 4, 64);

    EnsembleSpec slow;
    slow.kind = EnsembleKind::slow_band;
    slow.beta = 0.7;
    slow.seed = 20160205;
    const VarianceDecay sb = variance_decay(slow, {128, 256, 512, 1024}, 4, 64);

    std::printf("     criterion  9 detail: wigner slope %.3f, slow-band slope %.3f (vs log b_N)\n",
                wig.slope, sb.slope);
    return !wig.degenerate && wig.slope <= -0.8 && !sb.degenerate && sb.slope <= -0.8 &&
           seconds_since(t0) < 600.0;
}

// --- 10: relation audit --------------------------------------------------------
bool relation_audit() {
    bool ok = true;
    double prev_ratio = 1e9;
    for (int n : {32, 64, 128}) {
        const ConditionReport r = condition_counts(wigner_relation(n));
        ok = ok && r.c3_count == 0 && r.c2_max == 1 && r.c1_ratio < prev_ratio;
        prev_ratio = r.c1_ratio;
    }
    prev_ratio = 1e9;
    for (int h : {16, 32, 64}) {
        const ConditionReport r = condition_counts(block_relation(h, true));
        ok = ok && r.c1_max <= 6LL * 2 * h && r.c2_max <= 2 && r.c1_ratio < prev_ratio;
        prev_ratio = r.c1_ratio;
    }
    return ok;
}

// --- 11: eigensolver oracles ----------------------------------------------------
bool eigensolver_oracles() {
    bool ok = true;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 16 + (trial * 7) % 113;  // sizes spread over [16, 128]
        MatrixSample m;
        m.n = n;
        m.entries.resize(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const double v = 2.0 * rng::uniform01(rng::entry_stream(600 + trial, i, j), 0) - 1.0;
                m.entries(i, j) = v;
                m.entries(j, i) = v;
            }
        const SpectralSample s = eigenvalues(m);
        ok = ok && std::abs(s.eigenvalues.sum() - m.entries.trace()) <=
                       1e-10 * std::max(1.0, m.entries.norm());
        for (int k = 1; k <= 8; ++k) {
            const double via_eigs = s.eigenvalues.pow(k).sum();
            const double via_trace = trace_power_moment(m, k) * n;
            ok = ok && std::abs(via_eigs - via_trace) <= 1e-6 * s.eigenvalues.abs().pow(k).sum();
        }
    }
    return ok;
}

// --- 12: semicircle verdicts -----------------------------------------------------
bool scl_verdicts() {
    bool ok = scl_verdict(WeightFn::constant(1.0), 1e-3, 2048).verdict;
    for (double rho : {0.1, 0.25, 0.4, 0.45})
        ok = ok && scl_verdict(WeightFn::periodic_band(rho), 1e-3, 2048).verdict;
    for (double rho : {0.1, 0.25, 0.4, 0.6, 0.75, 0.9})
        ok = ok && !scl_verdict(WeightFn::band(rho), 1e-3, 2048).verdict;
    return ok;
}

}  // namespace

int main() {
    std::printf("specmom acceptance suite\n========================\n");
    criterion(1, "combinatorics exactness (counts, adopted sequences, trees; k <= 12)",
              combinatorics_exactness);
    criterion(2, "wigner theory: mu_k = C_{k/2} to 1e-9 at grid 2048", wigner_theory);
    criterion(3, "periodic band: J = (2 rho)^{k/2} to 1e-4, normalized moments to 1e-3",
              periodic_band_theory);
    criterion(4, "band rho=0.25: normalized mu_4 = 2.0680 +- 0.01 and > 2.05", band_scl_failure);
    criterion(5, "oracle equivalence |j_alpha - bruteforce| <= 5e-3 (k <= 6, grid 64)",
              oracle_equivalence);
    criterion(6, "monte carlo wigner N=512, 32 trials: Y2,Y4,Y6 windows, odd moments small",
              monte_carlo_wigner);
    criterion(7, "block minus N=512, 32 trials: same windows", block_matrices);
    criterion(8, "slow band beta=0.7, N=1024 (b=128), 32 trials: Y4 in [1.85, 2.15]", slow_band);
    criterion(9, "variance decay slopes <= -0.8 (wigner vs N, slow band vs b_N)",
              variance_decay_experiment);
    criterion(10, "relation audit: wigner exact counts, block bounds, shrinking ratios",
              relation_audit);
    criterion(11, "eigensolver oracles on 50 random symmetric matrices (N <= 128)",
              eigensolver_oracles);
    criterion(12, "scl verdicts: constant/periodic true, proportional band false", scl_verdicts);

    std::printf("========================\n%s: %d of 12 criteria failed\n",
                failures == 0 ? "SUCCESS" : "FAILURE", failures);
    return failures;
}
