// Pair partitions of {1,...,k} and the non-crossing subfamily.
//
// A pair partition is stored as a partner array: partner[i] is the index
// paired with i (0-based; printed 1-based).  Non-crossing pair partitions
// of a 2m-set are counted by the Catalan number C_m and are in bijection
// with rooted trees on m+1 nodes; the tree side lives in adopted.hpp.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace specmom {

// C_m = binom(2m, m) / (m + 1), exact in 64-bit for m <= 30.
std::int64_t catalan(int m);

class PairPartition {
public:
    // partner must be an involution without fixed points.
    explicit PairPartition(std::vector<int> partner);

    int k() const { return static_cast<int>(partner_.size()); }
    int partner(int i) const { return partner_[i]; }
    const std::vector<int>& partner_array() const { return partner_; }

    // Blocks {i, partner(i)} with i < partner(i), ascending in i.
    std::vector<std::pair<int, int>> blocks() const;

    // 1-based rendering, e.g. "{1,2},{3,4}".
    std::string to_string() const;

    bool operator==(const PairPartition& other) const { return partner_ == other.partner_; }

private:
    std::vector<int> partner_;
};

// True iff no a < b < c < d has {a,c} and {b,d} both in pi.
bool is_noncrossing(const PairPartition& pi);

// All non-crossing pair partitions of {1,...,k}, in lexicographic order of
// their partner arrays.  Exactly catalan(k/2) of them.  k even, 2 <= k <= 16.
std::vector<PairPartition> enumerate_nc_pair_partitions(int k);

// Smallest m (0-based) with {m, m+1} in pi, the cyclic wrap {k-1, 0}
// considered last.  pi must be non-crossing; such an m then always exists.
int find_leaf_block(const PairPartition& pi);

}  // namespace specmom
