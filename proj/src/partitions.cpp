#include "specmom/partitions.hpp"

#include <algorithm>
#include <stdexcept>

namespace specmom {

std::int64_t catalan(int m) {
    if (m < 0) throw std::invalid_argument("catalan: m must be >= 0");
    if (m > 30) throw std::invalid_argument("catalan: m > 30 overflows exact 64-bit arithmetic");
    // binom(2m, m) by the multiplicative rule; every prefix is itself a
    // binomial coefficient, so the division is exact at each step.
    std::int64_t binom = 1;
    for (int i = 1; i <= m; ++i) binom = binom * (m + i) / i;
    return binom / (m + 1);
}

PairPartition::PairPartition(std::vector<int> partner) : partner_(std::move(partner)) {
    const int k = static_cast<int>(partner_.size());
    if (k == 0 || k % 2 != 0) throw std::invalid_argument("PairPartition: k must be even and positive");
    for (int i = 0; i < k; ++i) {
        const int j = partner_[i];
        if (j < 0 || j >= k || j == i || partner_[j] != i)
            throw std::invalid_argument("PairPartition: partner array is not a fixed-point-free involution");
    }
}

std::vector<std::pair<int, int>> PairPartition::blocks() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(partner_.size() / 2);
    for (int i = 0; i < k(); ++i)
        if (i < partner_[i]) out.emplace_back(i, partner_[i]);
    return out;
}

std::string PairPartition::to_string() const {
    std::string s;
    for (const auto& [a, b] : blocks()) {
        if (!s.empty()) s += ',';
        s += '{' + std::to_string(a + 1) + ',' + std::to_string(b + 1) + '}';
    }
    return s;
}

bool is_noncrossing(const PairPartition& pi) {
    const int k = pi.k();
    for (int a = 0; a < k; ++a) {
        const int c = pi.partner(a);
        if (c <= a) continue;
        for (int b = a + 1; b < c; ++b) {
            const int d = pi.partner(b);
            if (d < a || d > c) return false;  // {a,c} and {b,d} interleave
        }
    }
    return true;
}

std::vector<PairPartition> enumerate_nc_pair_partitions(int k) {
    if (k < 2 || k > 16 || k % 2 != 0)
        throw std::invalid_argument("enumerate_nc_pair_partitions: k must be even with 2 <= k <= 16");

    std::vector<PairPartition> out;
    out.reserve(static_cast<std::size_t>(catalan(k / 2)));
    std::vector<int> partner(k, -1);

    // Pair the lowest free position of each pending segment with ascending
    // candidates; segments are processed left to right so the emitted partner
    // arrays come out in lexicographic order.
    auto rec = [&](auto&& self, const std::vector<std::pair<int, int>>& segments) -> void {
        if (segments.empty()) {
            out.emplace_back(partner);
            return;
        }
        const auto [lo, hi] = segments.front();
        std::vector<std::pair<int, int>> rest(segments.begin() + 1, segments.end());
        for (int j = lo + 1; j < hi; j += 2) {
            partner[lo] = j;
            partner[j] = lo;
            std::vector<std::pair<int, int>> next;
            if (lo + 1 < j) next.emplace_back(lo + 1, j);
            if (j + 1 < hi) next.emplace_back(j + 1, hi);
            next.insert(next.end(), rest.begin(), rest.end());
            self(self, next);
        }
        partner[lo] = -1;
    };
    rec(rec, {{0, k}});
    return out;
}

int find_leaf_block(const PairPartition& pi) {
    if (!is_noncrossing(pi)) throw std::invalid_argument("find_leaf_block: partition is crossing");
    const int k = pi.k();
    for (int m = 0; m + 1 < k; ++m)
        if (pi.partner(m) == m + 1) return m;
    if (pi.partner(k - 1) == 0) return k - 1;  // cyclic wrap, considered last
    throw std::logic_error("find_leaf_block: non-crossing partition without adjacent block");
}

}  // namespace specmom
