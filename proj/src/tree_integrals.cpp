#include "specmom/tree_integrals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specmom {

namespace {

struct Tree {
    int nodes = 0;
    std::vector<std::vector<int>> adjacency;
};

Tree tree_of(const PairPartition& pi) {
    const AdoptedGraph g = adopted_graph(pi);
    Tree t;
    t.nodes = g.node_count;
    t.adjacency.resize(g.node_count);
    for (const auto& [a, b] : g.edges) {
        t.adjacency[a].push_back(b);
        t.adjacency[b].push_back(a);
    }
    return t;
}

}  // namespace

SquaredWeightKernel::SquaredWeightKernel(const WeightFn& w, int grid_n) : grid_n_(grid_n) {
    if (grid_n < 64) throw std::invalid_argument("SquaredWeightKernel: grid_n must be >= 64");
    const StepFunction& sq = w.squared_step();
    const double h = 1.0 / grid_n;
    lag_.resize(grid_n);
    lag_[0] = 2.0 * grid_n * sq.antiderivative(0.5 * h);
    for (int d = 1; d < grid_n; ++d)
        lag_[d] = grid_n * (sq.antiderivative((d + 0.5) * h) - sq.antiderivative((d - 0.5) * h));

    double acc = 0.0;
    for (int a = 0; a < grid_n; ++a) acc += phi_exact(w, (a + 0.5) * h);
    phi0_ = acc * h;
}

Eigen::ArrayXd SquaredWeightKernel::apply(const Eigen::ArrayXd& v) const {
    const int n = grid_n_;
    Eigen::ArrayXd out(n);
    for (int a = 0; a < n; ++a) {
        double acc = 0.0;
        for (int b = 0; b < a; ++b) acc += lag_[a - b] * v[b];
        for (int b = a; b < n; ++b) acc += lag_[b - a] * v[b];
        out[a] = acc;
    }
    return out / n;
}

double j_alpha_elimination_order(const PairPartition& pi, const SquaredWeightKernel& kernel,
                                 const std::vector<int>& order) {
    if (!is_noncrossing(pi)) throw std::invalid_argument("j_alpha: partition is crossing");
    Tree t = tree_of(pi);
    if (static_cast<int>(order.size()) != t.nodes - 1)
        throw std::invalid_argument("j_alpha: elimination order must cover all nodes but one");

    const int n = kernel.grid_n();
    std::vector<int> degree(t.nodes);
    for (int v = 0; v < t.nodes; ++v) degree[v] = static_cast<int>(t.adjacency[v].size());
    std::vector<char> alive(t.nodes, 1);
    std::vector<Eigen::ArrayXd> message(t.nodes, Eigen::ArrayXd::Ones(n));

    for (int v : order) {
        if (v < 0 || v >= t.nodes || !alive[v] || degree[v] != 1)
            throw std::invalid_argument("j_alpha: node " + std::to_string(v) + " is not a removable leaf");
        int parent = -1;
        for (int u : t.adjacency[v])
            if (alive[u]) parent = u;
        message[parent] *= kernel.apply(message[v]);
        alive[v] = 0;
        --degree[parent];
    }
    for (int v = 0; v < t.nodes; ++v)
        if (alive[v]) return message[v].mean();
    throw std::logic_error("j_alpha: no node left after elimination");
}

double j_alpha(const PairPartition& pi, const SquaredWeightKernel& kernel) {
    if (!is_noncrossing(pi)) throw std::invalid_argument("j_alpha: partition is crossing");
    Tree t = tree_of(pi);
    // Ascending-node default: peel the smallest current leaf until one node
    // remains.
    std::vector<int> degree(t.nodes);
    for (int v = 0; v < t.nodes; ++v) degree[v] = static_cast<int>(t.adjacency[v].size());
    std::vector<char> alive(t.nodes, 1);
    std::vector<int> order;
    for (int step = 0; step + 1 < t.nodes; ++step) {
        int leaf = -1;
        for (int v = 0; v < t.nodes && leaf < 0; ++v)
            if (alive[v] && degree[v] == 1) leaf = v;
        order.push_back(leaf);
        alive[leaf] = 0;
        for (int u : t.adjacency[leaf])
            if (alive[u]) --degree[u];
    }
    return j_alpha_elimination_order(pi, kernel, order);
}

double j_alpha(const PairPartition& pi, const WeightFn& w, int grid_n) {
    return j_alpha(pi, SquaredWeightKernel(w, grid_n));
}

double j_alpha_bruteforce(const PairPartition& pi, const WeightFn& w, int grid_n) {
    if (pi.k() > 6) throw std::invalid_argument("j_alpha_bruteforce: k > 6 rejected");
    if (grid_n < 2 || grid_n > 64) throw std::invalid_argument("j_alpha_bruteforce: grid_n must lie in [2,64]");
    if (!is_noncrossing(pi)) throw std::invalid_argument("j_alpha_bruteforce: partition is crossing");

    const AdoptedGraph g = adopted_graph(pi);
    const int m = g.node_count;
    const int n = grid_n;

    // Same per-cell kernel values as the elimination route; only the
    // summation differs (full nested sum over every node variable).
    const StepFunction& sq = w.squared_step();
    const double h = 1.0 / n;
    std::vector<double> lag(n);
    lag[0] = 2.0 * n * sq.antiderivative(0.5 * h);
    for (int d = 1; d < n; ++d) lag[d] = n * (sq.antiderivative((d + 0.5) * h) - sq.antiderivative((d - 0.5) * h));

    // Edges grouped by their larger endpoint so each factor enters as soon
    // as both endpoints are assigned.
    std::vector<std::vector<int>> lower_neighbors(m);
    for (const auto& [a, b] : g.edges) lower_neighbors[b].push_back(a);

    std::vector<int> grid_index(m, 0);
    double total = 0.0;
    auto rec = [&](auto&& self, int node, double partial) -> void {
        if (node == m) {
            total += partial;
            return;
        }
        for (int r = 0; r < n; ++r) {
            grid_index[node] = r;
            double p = partial;
            for (int u : lower_neighbors[node]) p *= lag[std::abs(r - grid_index[u])];
            self(self, node + 1, p);
        }
    };
    rec(rec, 0, 1.0);
    return total / std::pow(static_cast<double>(n), m);
}

TreeIntegralEvaluator::TreeIntegralEvaluator(const WeightFn& w, int grid_n) : kernel_(w, grid_n) {}

double TreeIntegralEvaluator::integrate(const PairPartition& pi) {
    if (!is_noncrossing(pi)) throw std::invalid_argument("TreeIntegralEvaluator: partition is crossing");
    Tree t = tree_of(pi);
    const int n = kernel_.grid_n();

    // Up-message of the subtree hanging below v, memoized by subtree shape:
    // identical shapes under any partition produce identical messages.
    auto up = [&](auto&& self, int v, int parent) -> std::pair<std::string, const Eigen::ArrayXd*> {
        std::vector<std::string> child_sigs;
        std::vector<const Eigen::ArrayXd*> child_msgs;
        for (int u : t.adjacency[v])
            if (u != parent) {
                auto [sig, msg] = self(self, u, v);
                child_sigs.push_back(std::move(sig));
                child_msgs.push_back(msg);
            }
        std::sort(child_sigs.begin(), child_sigs.end());
        std::string sig = "(";
        for (const auto& s : child_sigs) sig += s;
        sig += ')';

        auto it = messages_.find(sig);
        if (it == messages_.end()) {
            Eigen::ArrayXd below = Eigen::ArrayXd::Ones(n);
            for (const auto* msg : child_msgs) below *= *msg;
            it = messages_.emplace(sig, kernel_.apply(below)).first;
        }
        return {std::move(sig), &it->second};
    };

    Eigen::ArrayXd root_product = Eigen::ArrayXd::Ones(n);
    for (int u : t.adjacency[0]) root_product *= *up(up, u, 0).second;
    return root_product.mean();
}

double theoretical_moment(int k, const WeightFn& w, int grid_n, bool normalized) {
    if (k < 1) throw std::invalid_argument("theoretical_moment: k must be >= 1");
    if (k % 2 != 0) return 0.0;
    if (k > 16) throw std::invalid_argument("theoretical_moment: even k > 16 rejected");

    TreeIntegralEvaluator evaluator(w, grid_n);
    double sum = 0.0;
    for (const PairPartition& pi : enumerate_nc_pair_partitions(k)) sum += evaluator.integrate(pi);
    if (normalized) {
        const double p0 = phi0_exact(w);
        if (p0 <= 0.0) throw std::invalid_argument("theoretical_moment: phi0 <= 0, cannot normalize");
        sum /= std::pow(p0, k / 2);
    }
    return sum;
}

MomentTable moment_table(const WeightFn& w, int k_max, int grid_n, bool normalized) {
    if (k_max < 1 || k_max > 16) throw std::invalid_argument("moment_table: k_max must lie in [1,16]");
    MomentTable table{w, {}, grid_n, normalized};
    TreeIntegralEvaluator evaluator(w, grid_n);
    const double p0 = normalized ? phi0_exact(w) : 1.0;
    if (normalized && p0 <= 0.0) throw std::invalid_argument("moment_table: phi0 <= 0, cannot normalize");
    for (int k = 1; k <= k_max; ++k) {
        if (k % 2 != 0) {
            table.entries[k] = 0.0;
            continue;
        }
        double sum = 0.0;
        for (const PairPartition& pi : enumerate_nc_pair_partitions(k)) sum += evaluator.integrate(pi);
        table.entries[k] = normalized ? sum / std::pow(p0, k / 2) : sum;
    }
    return table;
}

SclReport scl_verdict(const WeightFn& w, double tol, int grid_n) {
    SclReport report;
    report.phi_report = is_phi_constant(w, tol, grid_n);
    report.verdict = report.phi_report.constant_verdict;
    report.moment_gap = theoretical_moment(4, w, grid_n, /*normalized=*/true) - 2.0;
    return report;
}

}  // namespace specmom
