// Tree integrals J_alpha(pi) and theoretical spectral moments.
//
// For a non-crossing pair partition pi with adopted tree (V, E),
//
//   J_alpha(pi) = int_{[0,1]^{k/2+1}} prod_{{i,j} in E} alpha^2(|x_i - x_j|) dx,
//
// and the limiting moments of the weighted ensemble are
//
//   mu_k = sum_{pi in B_{k/2}} J_alpha(pi)   (k even),   mu_k = 0   (k odd).
//
// Evaluation discretizes [0,1] into grid_n midpoint cells and eliminates
// leaves of the tree: a leaf sends its parent the message
// (1/n) * sum_b K(a,b) * m(b), where K is the kernel matrix.  K depends on
// |a - b| only (Toeplitz), so one lag vector per (weight, grid) suffices.
// Each lag entry is the exact integral of alpha^2 over the source cell,
//
//   K(a,b) = n * int_{cell b} alpha^2(|x_a - y|) dy
//          = n * (P(d + h/2) - P(d - h/2)),   d = |a-b| * h,  h = 1/n,
//
// with P the antiderivative of alpha^2.  Row means of K then equal phi at
// the midpoints exactly, and the remaining quadrature error is O(1/n^2)
// (products of piecewise-linear phi factors) instead of the O(1/n) bias a
// pointwise-sampled indicator kernel would carry.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "specmom/adopted.hpp"
#include "specmom/partitions.hpp"
#include "specmom/weights.hpp"

namespace specmom {

class SquaredWeightKernel {
public:
    SquaredWeightKernel(const WeightFn& w, int grid_n);

    int grid_n() const { return grid_n_; }
    double entry(int a, int b) const { return lag_[std::abs(a - b)]; }

    // (1/n) * K v  — one leaf-elimination message step.
    Eigen::ArrayXd apply(const Eigen::ArrayXd& v) const;

    // Midpoint average of exact phi; converges to phi0 at O(1/n^2).
    double phi0() const { return phi0_; }

private:
    int grid_n_;
    Eigen::ArrayXd lag_;  // kernel value at lag d = |a - b|
    double phi0_;
};

// J_alpha(pi) by leaf elimination in ascending-node order.  pi non-crossing,
// grid_n >= 64.
double j_alpha(const PairPartition& pi, const WeightFn& w, int grid_n = 2048);
double j_alpha(const PairPartition& pi, const SquaredWeightKernel& kernel);

// Same integral, eliminating the given nodes in the given order; every entry
// must be a leaf of the remaining tree at its turn and exactly one node must
// be left over.  Exposed so order independence is checkable.
double j_alpha_elimination_order(const PairPartition& pi, const SquaredWeightKernel& kernel,
                                 const std::vector<int>& order);

// Direct (k/2+1)-fold nested midpoint summation over the same kernel; the
// independent route used to validate the leaf elimination.  k <= 6 and
// grid_n <= 64 keep the cost bounded.
double j_alpha_bruteforce(const PairPartition& pi, const WeightFn& w, int grid_n = 64);

// Shares one kernel and memoizes per-subtree messages across partitions, so
// a full moment table costs far fewer matrix passes than one elimination per
// partition.  Results equal j_alpha to rounding.
class TreeIntegralEvaluator {
public:
    TreeIntegralEvaluator(const WeightFn& w, int grid_n);

    const SquaredWeightKernel& kernel() const { return kernel_; }
    double integrate(const PairPartition& pi);

private:
    SquaredWeightKernel kernel_;
    std::unordered_map<std::string, Eigen::ArrayXd> messages_;  // subtree shape -> up message
};

// mu_k for even k <= 16 (sum over B_{k/2}); 0 for odd k.  When normalized,
// the sum is divided by phi0^{k/2}, matching the 1/sqrt(phi0) rescaling of
// the ensemble.
double theoretical_moment(int k, const WeightFn& w, int grid_n = 2048, bool normalized = false);

struct MomentTable {
    WeightFn weight;
    std::map<int, double> entries;  // k -> mu_k
    int grid_n = 0;
    bool normalized = false;
};

MomentTable moment_table(const WeightFn& w, int k_max, int grid_n = 2048, bool normalized = false);

// Semicircle verdict: the rescaled ensemble satisfies the semicircle law
// iff phi is constant.  moment_gap = normalized mu_4 - 2; a strictly
// positive gap certifies failure (Cauchy-Schwarz makes it nonnegative).
struct SclReport {
    bool verdict = false;
    PhiReport phi_report;
    double moment_gap = 0.0;
};

SclReport scl_verdict(const WeightFn& w, double tol, int grid_n = 2048);

}  // namespace specmom
