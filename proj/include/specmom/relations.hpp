// Equivalence relations on index pairs {0..N-1}^2 controlling which matrix
// entries share a primitive random value.
//
// A relation assigns every pair (p,q) a class id and a sign; entries in one
// class are filled from one primitive value times their sign, entries in
// distinct classes from independent values.  Symmetry (p,q) ~ (q,p) with
// equal sign is required throughout.
//
// condition_counts audits the three dependence conditions
//   (1) max_p #{(q,r,s) : (p,q) ~ (r,s)}            -- must be o(N^2)
//   (2) max_{p,q,r} #{s : (p,q) ~ (r,s)}            -- must stay bounded
//   (3) #{(p,q,r) : (p,q) ~ (q,r), r != p}          -- must be o(N^2)
// at finite N (ratio evidence only; the asymptotics are not decidable here).

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace specmom {

class EquivalenceRelation {
public:
    struct ClassRef {
        std::int64_t id = 0;
        int sign = 1;
    };

    EquivalenceRelation(int n, std::string name, std::function<ClassRef(int, int)> class_fn);

    int size() const { return n_; }
    const std::string& name() const { return name_; }
    ClassRef class_of(int p, int q) const;  // 0-based indices

private:
    int n_;
    std::string name_;
    std::function<ClassRef(int, int)> class_fn_;
};

// Independent entries up to symmetry: [(p,q)] = {(p,q), (q,p)}.
EquivalenceRelation wigner_relation(int n);

// Relation of the 2h x 2h block matrix (A B; B^T ±A): the two A copies share
// classes (the lower-right one carrying sign -1 when minus is set); B entries
// tie only to their transpose mirror.
EquivalenceRelation block_relation(int h, bool minus);

// Lines "p q class_id sign" (1-based p, q); every pair must be covered and
// the assignment must be symmetric including signs.
EquivalenceRelation relation_from_table(const std::string& path);

struct ConditionReport {
    int n = 0;
    std::int64_t c1_max = 0;   // condition (1) count at its worst p
    std::int64_t c2_max = 0;   // empirical bound B of condition (2)
    std::int64_t c3_count = 0; // condition (3) count
    double c1_ratio = 0.0;     // c1_max / N^2, or / b^2 when band_b is set
    double c3_ratio = 0.0;
    std::optional<int> band_b;
};

// Exact counts via class grouping (one pass over the N^2 pairs, then
// per-class aggregation).  N <= 512.
ConditionReport condition_counts(const EquivalenceRelation& rel, std::optional<int> band_b = {});

struct GrowthReport {
    struct Row {
        int n = 0;
        std::int64_t c1_max = 0;
        std::int64_t c3_count = 0;
        double c1_ratio = 0.0;
        double c3_ratio = 0.0;
    };
    std::vector<Row> rows;
    bool c1_strictly_decreasing = false;
    bool c3_nonincreasing = false;
};

GrowthReport growth_report(const std::function<EquivalenceRelation(int)>& builder, const std::vector<int>& ns);

}  // namespace specmom
