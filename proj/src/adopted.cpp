#include "specmom/adopted.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace specmom {

namespace {

// Relabel so labels appear in first-appearance order 0, 1, 2, ...
std::vector<int> canonicalize(const std::vector<int>& labels) {
    std::unordered_map<int, int> remap;
    std::vector<int> out;
    out.reserve(labels.size());
    for (int v : labels) {
        auto [it, inserted] = remap.emplace(v, static_cast<int>(remap.size()));
        out.push_back(it->second);
    }
    return out;
}

std::vector<int> build_labels(const std::vector<int>& partner) {
    const int k = static_cast<int>(partner.size());
    if (k == 2) return {0, 1};

    // Leftmost interior adjacent block; one always exists for non-crossing pi.
    int i = -1;
    for (int m = 0; m + 1 < k; ++m)
        if (partner[m] == m + 1) {
            i = m;
            break;
        }
    if (i < 0) throw std::logic_error("build_labels: no interior adjacent block");

    std::vector<int> reduced(k - 2);
    for (int x = 0; x < k; ++x) {
        if (x == i || x == i + 1) continue;
        const int nx = x < i ? x : x - 2;
        const int p = partner[x];
        reduced[nx] = p < i ? p : p - 2;
    }
    const std::vector<int> s = build_labels(reduced);

    // Splice the removed block back in: visit a fresh node from s[i] and
    // return, i.e. (s_0,...,s_i, new, s_i, s_{i+1},...).
    const int fresh = (k - 2) / 2 + 1;
    std::vector<int> g;
    g.reserve(k);
    g.insert(g.end(), s.begin(), s.begin() + i + 1);
    g.push_back(fresh);
    g.push_back(s[i]);
    g.insert(g.end(), s.begin() + i + 1, s.end());
    return g;
}

bool satisfies_recursive_definition(const std::vector<int>& partner, const std::vector<int>& g) {
    const int k = static_cast<int>(partner.size());
    if (k == 2) return partner[0] == 1 && g[0] != g[1];

    bool found_adjacent = false;
    for (int i = 0; i < k; ++i) {
        const int j = (i + 1) % k;
        if (partner[i] != j) continue;
        found_adjacent = true;

        if (g[i] != g[(i + 2) % k]) return false;
        if (std::count(g.begin(), g.end(), g[j]) != 1) return false;

        // Rotate the block to positions (0, 1); drop sequence entries 1 and 2
        // and partition elements 0 and 1, then recurse on the reduction.
        std::vector<int> q(k), t(k);
        for (int x = 0; x < k; ++x) {
            const int src = (x + i) % k;
            q[x] = (partner[src] - i + k) % k;
            t[x] = g[src];
        }
        std::vector<int> reduced_partner(k - 2);
        for (int x = 2; x < k; ++x) reduced_partner[x - 2] = q[x] - 2;
        std::vector<int> reduced_g;
        reduced_g.reserve(k - 2);
        reduced_g.push_back(t[0]);
        reduced_g.insert(reduced_g.end(), t.begin() + 3, t.end());
        if (!satisfies_recursive_definition(reduced_partner, reduced_g)) return false;
    }
    return found_adjacent;
}

}  // namespace

int AdoptedSequence::node_count() const {
    std::unordered_set<int> distinct(labels.begin(), labels.end());
    return static_cast<int>(distinct.size());
}

bool AdoptedGraph::is_tree() const {
    if (static_cast<int>(edges.size()) != node_count - 1) return false;
    std::vector<std::vector<int>> adj(node_count);
    for (const auto& [a, b] : edges) {
        if (a < 0 || b < 0 || a >= node_count || b >= node_count || a == b) return false;
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<char> seen(node_count, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int visited = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++visited;
                stack.push_back(w);
            }
    }
    return visited == node_count;
}

AdoptedSequence build_adopted_sequence(const PairPartition& pi) {
    if (!is_noncrossing(pi)) throw std::invalid_argument("build_adopted_sequence: partition is crossing");
    return AdoptedSequence{canonicalize(build_labels(pi.partner_array()))};
}

bool verify_adopted(const PairPartition& pi, const AdoptedSequence& seq) {
    const int k = pi.k();
    if (seq.k() != k) return false;
    const auto& g = seq.labels;

    // Closed-form consequence: every block {a, b} forces g_a = g_{b+1} and
    // g_{a+1} = g_b (indices cyclic).
    for (const auto& [a, b] : pi.blocks())
        if (g[a] != g[(b + 1) % k] || g[a + 1] != g[b]) return false;

    return satisfies_recursive_definition(pi.partner_array(), g);
}

AdoptedGraph adopted_graph(const AdoptedSequence& seq) {
    const int k = seq.k();
    std::vector<std::pair<int, int>> edges;
    for (int m = 0; m < k; ++m) {
        int a = seq.labels[m];
        int b = seq.labels[(m + 1) % k];
        if (a > b) std::swap(a, b);
        edges.emplace_back(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return AdoptedGraph{seq.node_count(), std::move(edges)};
}

AdoptedGraph adopted_graph(const PairPartition& pi) {
    return adopted_graph(build_adopted_sequence(pi));
}

}  // namespace specmom
