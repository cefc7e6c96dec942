// Sampling of the symmetric random matrix ensembles.
//
//   weighted       M = (1/sqrt(N)) ( alpha(|i-j|/N) X_ij )
//   periodic_band  entries kept where min(|i-j|, N-|i-j|) <= rho N
//   band           entries kept where |i-j| <= rho N
//   slow_band      (1/sqrt(2 b_N)) with b_N = max(1, floor(N^beta)), beta in (0,1)
//
// block_mode switches the dependence structure to the block relation of
// (A B; B^T ±A); the total dimension stays n and the 1/sqrt(n) scaling
// already equals the block form's 1/sqrt(2 * n/2).
//
// Entries are drawn one primitive value per equivalence class from counter
// streams keyed by (seed, trial, class_id): identical (spec, trial) gives a
// bit-identical sample.

#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "specmom/relations.hpp"
#include "specmom/rng.hpp"
#include "specmom/weights.hpp"

namespace specmom {

enum class EnsembleKind { weighted, periodic_band, band, slow_band };
enum class BlockMode { none, plus, minus };
enum class EntryDist { rademacher, gaussian };

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::weighted;
    WeightFn weight = WeightFn::constant(1.0);  // kind == weighted only
    double rho = 0.0;                           // band kinds
    double beta = 0.0;                          // slow_band
    BlockMode block_mode = BlockMode::none;
    int n = 0;
    EntryDist entry_dist = EntryDist::rademacher;
    std::uint64_t seed = 1;

    void validate() const;
    int band_width() const;  // slow_band: b_N

    // The weight whose tree integrals predict this ensemble's moments;
    // nullopt for slow_band (its limit is the semicircle law directly).
    std::optional<WeightFn> theory_weight() const;

    static EnsembleSpec wigner(int n, std::uint64_t seed = 1);

    // Flat JSON object with keys kind, rho, beta, block_mode, n, dist, seed
    // (plus weight for the weighted kind).
    std::string to_json() const;
    static EnsembleSpec from_json(const std::string& json_text);

    // Shorthand grammar: wigner | band:RHO | periodic:RHO | slowband:BETA |
    // block | block-minus | weighted:<weight-spec>.  Inline JSON ('{...}')
    // and @file.json are accepted too.
    static EnsembleSpec parse(const std::string& text);
};

struct MatrixSample {
    int n = 0;
    Eigen::MatrixXd entries;
};

// Mean zero, unit variance; rademacher = ±1, gaussian via Box-Muller from
// two uniforms of the stream.
double sample_entry_value(EntryDist dist, rng::Stream stream);

MatrixSample sample_matrix(const EnsembleSpec& spec, std::int64_t trial);

const char* to_string(EnsembleKind kind);
const char* to_string(BlockMode mode);
const char* to_string(EntryDist dist);

}  // namespace specmom
