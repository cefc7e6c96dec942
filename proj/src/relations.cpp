#include "specmom/relations.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace specmom {

EquivalenceRelation::EquivalenceRelation(int n, std::string name,
                                         std::function<ClassRef(int, int)> class_fn)
    : n_(n), name_(std::move(name)), class_fn_(std::move(class_fn)) {
    if (n < 1) throw std::invalid_argument("EquivalenceRelation: size must be >= 1");
}

EquivalenceRelation::ClassRef EquivalenceRelation::class_of(int p, int q) const {
    if (p < 0 || q < 0 || p >= n_ || q >= n_)
        throw std::out_of_range("EquivalenceRelation::class_of: index out of range");
    return class_fn_(p, q);
}

EquivalenceRelation wigner_relation(int n) {
    return EquivalenceRelation(n, "wigner", [n](int p, int q) {
        const std::int64_t lo = std::min(p, q);
        const std::int64_t hi = std::max(p, q);
        return EquivalenceRelation::ClassRef{lo * n + hi, 1};
    });
}

EquivalenceRelation block_relation(int h, bool minus) {
    if (h < 1) throw std::invalid_argument("block_relation: block size must be >= 1");
    const std::string name = minus ? "block-minus" : "block";
    return EquivalenceRelation(2 * h, name, [h, minus](int p, int q) {
        const bool p_hi = p >= h, q_hi = q >= h;
        const std::int64_t a = p_hi ? p - h : p;
        const std::int64_t b = q_hi ? q - h : q;
        if (p_hi == q_hi) {
            // One of the two A copies; the lower-right copy flips sign in
            // minus mode.
            const std::int64_t lo = std::min(a, b), hi = std::max(a, b);
            const int sign = (p_hi && minus) ? -1 : 1;
            return EquivalenceRelation::ClassRef{lo * h + hi, sign};
        }
        // B (upper-right) or its transpose mirror (lower-left): the class is
        // the ordered B position.
        const std::int64_t row = p_hi ? b : a;
        const std::int64_t col = p_hi ? a : b;
        return EquivalenceRelation::ClassRef{static_cast<std::int64_t>(h) * h + row * h + col, 1};
    });
}

EquivalenceRelation relation_from_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("relation table: cannot open '" + path + "'");

    struct Entry {
        std::int64_t id;
        int sign;
    };
    std::unordered_map<std::int64_t, Entry> table;
    int n = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::int64_t p, q, id;
        int sign;
        if (!(ls >> p >> q >> id >> sign) || (sign != 1 && sign != -1) || p < 1 || q < 1)
            throw std::invalid_argument("relation table: malformed line '" + line + "'");
        n = std::max(n, static_cast<int>(std::max(p, q)));
        table[(p - 1) * (1 << 20) + (q - 1)] = Entry{id, sign};
    }
    if (n < 1 || n >= (1 << 20)) throw std::invalid_argument("relation table: bad index range");

    auto shared = std::make_shared<std::vector<Entry>>(static_cast<std::size_t>(n) * n);
    std::vector<char> present(static_cast<std::size_t>(n) * n, 0);
    for (const auto& [key, entry] : table) {
        const int p = static_cast<int>(key >> 20), q = static_cast<int>(key & ((1 << 20) - 1));
        if (p >= n || q >= n) throw std::invalid_argument("relation table: index out of range");
        (*shared)[static_cast<std::size_t>(p) * n + q] = entry;
        present[static_cast<std::size_t>(p) * n + q] = 1;
    }
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            if (!present[static_cast<std::size_t>(p) * n + q])
                throw std::invalid_argument("relation table: pair (" + std::to_string(p + 1) + "," +
                                            std::to_string(q + 1) + ") missing");
            const Entry& e = (*shared)[static_cast<std::size_t>(p) * n + q];
            const Entry& m = (*shared)[static_cast<std::size_t>(q) * n + p];
            if (e.id != m.id || e.sign != m.sign)
                throw std::invalid_argument("relation table: asymmetric at (" + std::to_string(p + 1) + "," +
                                            std::to_string(q + 1) + ")");
        }

    return EquivalenceRelation(n, "table", [shared, n](int p, int q) {
        const Entry& e = (*shared)[static_cast<std::size_t>(p) * n + q];
        return EquivalenceRelation::ClassRef{e.id, e.sign};
    });
}

ConditionReport condition_counts(const EquivalenceRelation& rel, std::optional<int> band_b) {
    const int n = rel.size();
    if (n > 512) throw std::invalid_argument("condition_counts: N > 512 rejected (counting cost guard)");

    // One pass: remember every pair's class id, and per class the total size
    // and the per-first-coordinate multiplicities.
    struct ClassStats {
        std::int64_t total = 0;
        std::unordered_map<int, std::int64_t> by_first;
    };
    std::vector<std::int64_t> id_of(static_cast<std::size_t>(n) * n);
    std::unordered_map<std::int64_t, ClassStats> classes;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            const auto ref = rel.class_of(p, q);
            id_of[static_cast<std::size_t>(p) * n + q] = ref.id;
            auto& st = classes[ref.id];
            ++st.total;
            ++st.by_first[p];
        }

    ConditionReport report;
    report.n = n;
    report.band_b = band_b;

    for (int p = 0; p < n; ++p) {
        std::int64_t count = 0;
        for (int q = 0; q < n; ++q) count += classes[id_of[static_cast<std::size_t>(p) * n + q]].total;
        report.c1_max = std::max(report.c1_max, count);
    }
    for (const auto& [id, st] : classes)
        for (const auto& [first, cnt] : st.by_first) report.c2_max = std::max(report.c2_max, cnt);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            auto& st = classes[id_of[static_cast<std::size_t>(p) * n + q]];
            auto it = st.by_first.find(q);
            const std::int64_t with_first_q = it == st.by_first.end() ? 0 : it->second;
            report.c3_count += with_first_q - 1;  // (q,p) itself is always present
        }

    const double denom = band_b ? static_cast<double>(*band_b) * *band_b : static_cast<double>(n) * n;
    report.c1_ratio = report.c1_max / denom;
    report.c3_ratio = report.c3_count / denom;
    return report;
}

GrowthReport growth_report(const std::function<EquivalenceRelation(int)>& builder,
                           const std::vector<int>& ns) {
    GrowthReport report;
    for (int n : ns) {
        const EquivalenceRelation rel = builder(n);
        const ConditionReport c = condition_counts(rel);
        report.rows.push_back({c.n, c.c1_max, c.c3_count, c.c1_ratio, c.c3_ratio});
    }
    report.c1_strictly_decreasing = true;
    report.c3_nonincreasing = true;
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        if (!(report.rows[i].c1_ratio < report.rows[i - 1].c1_ratio)) report.c1_strictly_decreasing = false;
        if (report.rows[i].c3_ratio > report.rows[i - 1].c3_ratio) report.c3_nonincreasing = false;
    }
    return report;
}

}  // namespace specmom
