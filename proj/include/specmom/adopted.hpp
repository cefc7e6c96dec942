// Adopted sequences and adopted graphs of non-crossing pair partitions.
//
// For a non-crossing pair partition pi of {1,...,k} there is exactly one
// (up to relabeling) sequence (g_1,...,g_k) that realizes pi as a closed
// walk: every adjacent block {m, m+1} satisfies g_m = g_{m+2}, g_{m+1} is
// visited once, and removing the block leaves an adopted sequence of the
// reduced partition.  Its consecutive pairs, taken cyclically, form a tree
// with k/2 + 1 nodes and k/2 edges.
//
// Labels are canonicalized by order of first appearance, so node 0 is the
// first entry and new nodes are numbered as they show up.

#pragma once

#include <vector>

#include "specmom/partitions.hpp"

namespace specmom {

struct AdoptedSequence {
    std::vector<int> labels;  // length k, values in 0..k/2

    int k() const { return static_cast<int>(labels.size()); }
    int node_count() const;  // number of distinct labels
};

struct AdoptedGraph {
    int node_count = 0;
    std::vector<std::pair<int, int>> edges;  // unordered pairs (a < b), sorted

    bool is_tree() const;  // connected and acyclic
};

// The canonical representative of the unique pi-adopted sequence.
// pi must be non-crossing.
AdoptedSequence build_adopted_sequence(const PairPartition& pi);

// Checks the recursive definition for every cyclically adjacent block and
// the closed-form block conditions g_a = g_{b+1}, g_{a+1} = g_b for every
// block {a, b}.  False (never throws) on any violation.
bool verify_adopted(const PairPartition& pi, const AdoptedSequence& seq);

// Edge set {labels[m], labels[m+1]} of the adopted sequence, cyclic in m.
AdoptedGraph adopted_graph(const PairPartition& pi);
AdoptedGraph adopted_graph(const AdoptedSequence& seq);

}  // namespace specmom
