#include "specmom/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace specmom {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

double trace_power_moment(const MatrixSample& sample, int k) {
    if (k < 1) throw std::invalid_argument("trace_power_moment: k must be >= 1");
    const Eigen::MatrixXd& m = sample.entries;
    if (k == 1) return m.trace() / sample.n;
    Eigen::MatrixXd power = m;
    for (int i = 1; i < k; ++i) power = power * m;
    return power.trace() / sample.n;
}

std::vector<double> trace_power_moments(const MatrixSample& sample, int k_max) {
    if (k_max < 1) throw std::invalid_argument("trace_power_moments: k_max must be >= 1");
    const Eigen::MatrixXd& m = sample.entries;
    const int half = (k_max + 1) / 2;
    std::vector<Eigen::MatrixXd> powers;
    powers.reserve(half);
    powers.push_back(m);
    for (int j = 1; j < half; ++j) powers.push_back(powers.back() * m);

    std::vector<double> out(k_max);
    for (int k = 1; k <= k_max; ++k) {
        double tr;
        if (k <= half) {
            tr = powers[k - 1].trace();
        } else {
            const int a = k / 2, b = k - k / 2;  // both <= half
            tr = powers[a - 1].cwiseProduct(powers[b - 1]).sum();
        }
        out[k - 1] = tr / sample.n;
    }
    return out;
}

JacobiNoConvergence::JacobiNoConvergence(double residual_, int sweeps_)
    : std::runtime_error("jacobi eigensolver: no convergence after " + std::to_string(sweeps_) +
                         " sweeps (off-diagonal residual " + std::to_string(residual_) + ")"),
      residual(residual_),
      sweeps(sweeps_) {}

SpectralSample eigenvalues(const MatrixSample& sample, double tol, int max_sweeps) {
    if (tol <= 0.0) throw std::invalid_argument("eigenvalues: tol must be positive");
    const int n = sample.n;
    Eigen::MatrixXd a = sample.entries;
    if ((a - a.transpose()).cwiseAbs().maxCoeff() != 0.0)
        throw std::invalid_argument("eigenvalues: matrix is not symmetric");

    const double frob = a.norm();
    auto off_norm = [&]() {
        double s = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) s += a(p, q) * a(p, q);
        return std::sqrt(2.0 * s);
    };

    double off = off_norm();
    int sweep = 0;
    while (off > tol * frob && frob > 0.0) {
        if (sweep++ >= max_sweeps) throw JacobiNoConvergence(off / frob, max_sweeps);
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                            : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = a(r, p), arq = a(r, q);
                    a(r, p) = c * arp - s * arq;
                    a(p, r) = a(r, p);
                    a(r, q) = s * arp + c * arq;
                    a(q, r) = a(r, q);
                }
            }
        off = off_norm();
    }

    SpectralSample out;
    out.eigenvalues = a.diagonal().array();
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    return out;
}

double semicircle_density(double x) {
    if (x <= -2.0 || x >= 2.0) return 0.0;
    return std::sqrt(4.0 - x * x) / (2.0 * kPi);
}

double semicircle_cdf(double x) {
    if (x <= -2.0) return 0.0;
    if (x >= 2.0) return 1.0;
    const double v = 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * kPi) + std::asin(x / 2.0) / kPi;
    return std::clamp(v, 0.0, 1.0);
}

std::vector<HistogramBin> histogram(const Eigen::ArrayXd& values, int bins, double lo, double hi) {
    if (bins < 8) throw std::invalid_argument("histogram: bins must be >= 8");
    if (values.size() == 0) throw std::invalid_argument("histogram: empty sample");
    if (!(hi > lo)) throw std::invalid_argument("histogram: empty range");

    const double width = (hi - lo) / bins;
    std::vector<std::int64_t> counts(bins, 0);
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        const double v = values[i];
        if (v < lo || v >= hi) continue;
        ++counts[std::min<int>(bins - 1, static_cast<int>((v - lo) / width))];
    }
    std::vector<HistogramBin> out(bins);
    const double scale = 1.0 / (static_cast<double>(values.size()) * width);
    for (int b = 0; b < bins; ++b)
        out[b] = {lo + b * width, lo + (b + 1) * width, counts[b] * scale};
    return out;
}

double ks_distance(const Eigen::ArrayXd& eigs) {
    if (eigs.size() == 0) throw std::invalid_argument("ks_distance: empty sample");
    std::vector<double> sorted(eigs.begin(), eigs.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = semicircle_cdf(sorted[i]);
        d = std::max(d, std::abs((i + 1) / n - f));
        d = std::max(d, std::abs(i / n - f));
    }
    return d;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SPECMOM_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

MomentReport empirical_moments(const EnsembleSpec& spec, int k_max, int trials,
                               double normalize_phi0, int threads) {
    if (trials < 2) throw std::invalid_argument("empirical_moments: trials must be >= 2");
    if (k_max < 1) throw std::invalid_argument("empirical_moments: k_max must be >= 1");
    spec.validate();

    std::vector<std::vector<double>> per_trial(trials);
    const int workers = std::min(resolve_threads(threads), trials);
    std::atomic<int> next{0};
    auto work = [&]() {
        for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
            const MatrixSample sample = sample_matrix(spec, t);
            per_trial[t] = trace_power_moments(sample, k_max);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    if (normalize_phi0 > 0.0)
        for (auto& ys : per_trial)
            for (int k = 1; k <= k_max; ++k) ys[k - 1] /= std::pow(normalize_phi0, k / 2.0);

    MomentReport report;
    report.n = spec.n;
    report.trials = trials;
    report.seed = spec.seed;
    report.normalize_phi0 = normalize_phi0;
    report.entries.resize(k_max);
    for (int k = 1; k <= k_max; ++k) {
        // Fixed trial-index order keeps the sums bit-reproducible across
        // worker counts.
        double mean = 0.0;
        for (int t = 0; t < trials; ++t) mean += per_trial[t][k - 1];
        mean /= trials;
        double ss = 0.0;
        for (int t = 0; t < trials; ++t) {
            const double d = per_trial[t][k - 1] - mean;
            ss += d * d;
        }
        report.entries[k - 1] = MomentEntry{k, mean, ss / (trials - 1), std::nullopt, 0.0};
    }
    return report;
}

VarianceDecay variance_decay(const EnsembleSpec& family, const std::vector<int>& ns, int k,
                             int trials, int threads) {
    if (ns.size() < 3) throw std::invalid_argument("variance_decay: need at least 3 sizes");
    if (trials < 16) throw std::invalid_argument("variance_decay: trials must be >= 16");

    VarianceDecay out;
    for (int n : ns) {
        EnsembleSpec spec = family;
        spec.n = n;
        const MomentReport report = empirical_moments(spec, k, trials, 0.0, threads);
        const int scale = spec.kind == EnsembleKind::slow_band ? spec.band_width() : n;
        out.rows.push_back({n, scale, report.entries[k - 1].variance});
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& row : out.rows) {
        if (row.variance <= 0.0) {
            out.degenerate = true;
            out.slope = -std::numeric_limits<double>::infinity();
            return out;
        }
        const double x = std::log(static_cast<double>(row.scale));
        const double y = std::log(row.variance);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(out.rows.size());
    out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return out;
}

}  // namespace specmom
