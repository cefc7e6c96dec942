// Empirical spectral statistics: trace-power moments Y_N^(k) = tr(M^k)/N,
// eigenvalues by cyclic Jacobi sweeps, histograms and Kolmogorov distance
// against the semicircle density, cross-trial moment reports and the
// variance-decay experiment.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "specmom/ensembles.hpp"

namespace specmom {

// (1/N) tr(M^k) by repeated multiplication.
double trace_power_moment(const MatrixSample& sample, int k);

// All of Y^(1)..Y^(k_max) from the half powers M^j, j <= ceil(k_max/2),
// using tr(M^{a+b}) = <M^a, M^b>_F for symmetric M.
std::vector<double> trace_power_moments(const MatrixSample& sample, int k_max);

struct SpectralSample {
    Eigen::ArrayXd eigenvalues;  // ascending
};

struct JacobiNoConvergence : std::runtime_error {
    JacobiNoConvergence(double residual, int sweeps);
    double residual;
    int sweeps;
};

// Cyclic Jacobi sweeps until the off-diagonal Frobenius norm drops below
// tol * ||M||_F; throws JacobiNoConvergence with the achieved residual
// otherwise.
SpectralSample eigenvalues(const MatrixSample& sample, double tol = 1e-14, int max_sweeps = 50);

// Semicircle density (1/(2 pi)) sqrt(4 - x^2) on [-2,2] and its cdf; even
// moments of the density are the Catalan numbers.
double semicircle_density(double x);
double semicircle_cdf(double x);

struct HistogramBin {
    double left = 0.0;
    double right = 0.0;
    double density = 0.0;
};

// Density-normalized histogram (integrates to the fraction of samples inside
// [lo, hi)).  bins >= 8 and a nonempty sample required.
std::vector<HistogramBin> histogram(const Eigen::ArrayXd& values, int bins, double lo, double hi);

// sup over the sample points of |empirical cdf - semicircle cdf|.
double ks_distance(const Eigen::ArrayXd& eigenvalues_sorted_or_not);

struct MomentEntry {
    int k = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased across trials
    std::optional<double> theory;
    double abs_err = 0.0;  // |mean - theory| when theory is set
};

struct MomentReport {
    int n = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    double normalize_phi0 = 0.0;  // 0 = raw moments
    std::vector<MomentEntry> entries;  // k = 1..k_max
};

// Cross-trial means and variances of Y^(k).  When normalize_phi0 > 0 every
// Y^(k) is divided by phi0^{k/2} (the 1/sqrt(phi0) matrix rescaling).
// Trials run on `threads` workers (0 = SPECMOM_THREADS or the hardware
// count); the reduction order is fixed by trial index either way.
MomentReport empirical_moments(const EnsembleSpec& spec, int k_max, int trials,
                               double normalize_phi0 = 0.0, int threads = 0);

struct VarianceDecay {
    struct Row {
        int n = 0;
        int scale = 0;  // N, or b_N for slow_band
        double variance = 0.0;
    };
    std::vector<Row> rows;
    double slope = 0.0;  // least-squares slope of log variance vs log scale
    bool degenerate = false;  // some variance was zero; slope set to -inf
};

VarianceDecay variance_decay(const EnsembleSpec& family, const std::vector<int>& ns, int k,
                             int trials, int threads = 0);

int resolve_threads(int requested);

}  // namespace specmom
