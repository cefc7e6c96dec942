#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "specmom/ensembles.hpp"

using namespace specmom;

namespace {

EnsembleSpec band_spec(double rho, int n, std::uint64_t seed = 9) {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::band;
    spec.rho = rho;
    spec.n = n;
    spec.seed = seed;
    return spec;
}

}  // namespace

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(band_spec(1.5, 32).validate(), std::invalid_argument);
    CHECK_THROWS_AS(band_spec(0.25, 1).validate(), std::invalid_argument);

    EnsembleSpec slow;
    slow.kind = EnsembleKind::slow_band;
    slow.n = 64;
    slow.beta = 1.0;
    CHECK_THROWS_AS(slow.validate(), std::invalid_argument);
    slow.beta = 0.7;
    CHECK_NOTHROW(slow.validate());
    slow.block_mode = BlockMode::minus;
    CHECK_THROWS_AS(slow.validate(), std::invalid_argument);

    EnsembleSpec blk = EnsembleSpec::wigner(33);
    blk.block_mode = BlockMode::plus;
    CHECK_THROWS_AS(blk.validate(), std::invalid_argument);
}

TEST_CASE("slow band width") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::slow_band;
    spec.beta = 0.7;
    spec.n = 1024;
    CHECK(spec.band_width() == 128);  // 1024^0.7 = 2^7 exactly
    spec.beta = 0.5;
    spec.n = 100;
    CHECK(spec.band_width() == 10);
    spec.n = 2;
    spec.beta = 0.1;
    CHECK(spec.band_width() == 1);
}

TEST_CASE("determinism: identical (spec, trial) gives a bit-identical sample") {
    const EnsembleSpec spec = EnsembleSpec::wigner(32, 1234);
    const MatrixSample a = sample_matrix(spec, 5);
    const MatrixSample b = sample_matrix(spec, 5);
    CHECK((a.entries - b.entries).cwiseAbs().maxCoeff() == 0.0);

    const MatrixSample c = sample_matrix(spec, 6);
    CHECK((a.entries - c.entries).cwiseAbs().maxCoeff() > 0.0);

    EnsembleSpec other = spec;
    other.seed = 1235;
    const MatrixSample d = sample_matrix(other, 5);
    CHECK((a.entries - d.entries).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("samples are exactly symmetric") {
    for (const EnsembleSpec& spec : {EnsembleSpec::wigner(17), band_spec(0.3, 33)}) {
        const MatrixSample m = sample_matrix(spec, 0);
        CHECK((m.entries - m.entries.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
    const MatrixSample tiny = sample_matrix(EnsembleSpec::wigner(2), 0);
    CHECK(tiny.entries(0, 1) == tiny.entries(1, 0));
}

TEST_CASE("band supports are exactly zero outside the band") {
    const int n = 64;
    const MatrixSample band = sample_matrix(band_spec(0.25, n), 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (std::abs(i - j) > 16) CHECK(band.entries(i, j) == 0.0);
            if (std::abs(i - j) <= 16) CHECK(band.entries(i, j) != 0.0);
        }

    EnsembleSpec slow;
    slow.kind = EnsembleKind::slow_band;
    slow.beta = 0.5;
    slow.n = 64;
    slow.seed = 4;
    const int b = slow.band_width();
    const MatrixSample sm = sample_matrix(slow, 0);
    for (int i = 0; i < slow.n; ++i)
        for (int j = 0; j < slow.n; ++j)
            if (std::abs(i - j) > b) CHECK(sm.entries(i, j) == 0.0);
}

TEST_CASE("periodic band keeps the wrapped distances") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::periodic_band;
    spec.rho = 0.25;
    spec.n = 100;
    spec.seed = 2;
    const MatrixSample m = sample_matrix(spec, 0);
    CHECK(m.entries(0, 90) != 0.0);  // min(90, 10) <= 25
    CHECK(m.entries(0, 50) == 0.0);  // min(50, 50) > 25
}

TEST_CASE("block ensembles couple the two A copies") {
    EnsembleSpec spec = EnsembleSpec::wigner(32, 77);
    spec.block_mode = BlockMode::minus;
    const MatrixSample m = sample_matrix(spec, 3);
    const int h = 16;
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j) {
            CHECK(m.entries(i + h, j + h) == -m.entries(i, j));  // minus copy of A
            CHECK(m.entries(i, j + h) == m.entries(j + h, i));   // B vs its mirror
        }

    spec.block_mode = BlockMode::plus;
    const MatrixSample p = sample_matrix(spec, 3);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j) CHECK(p.entries(i + h, j + h) == p.entries(i, j));
}

TEST_CASE("entry values: support, moments, determinism") {
    const auto r0 = sample_entry_value(EntryDist::rademacher, rng::entry_stream(3, 0, 17));
    CHECK((r0 == 1.0 || r0 == -1.0));
    CHECK(sample_entry_value(EntryDist::rademacher, rng::entry_stream(3, 0, 17)) == r0);

    const int draws = 100000;
    double r_sum = 0.0, g_sum = 0.0, g_sq = 0.0;
    for (int i = 0; i < draws; ++i) {
        r_sum += sample_entry_value(EntryDist::rademacher, rng::entry_stream(42, 0, i));
        const double g = sample_entry_value(EntryDist::gaussian, rng::entry_stream(42, 1, i));
        g_sum += g;
        g_sq += g * g;
    }
    const double r_mean = r_sum / draws;
    const double g_mean = g_sum / draws;
    const double g_var = g_sq / draws - g_mean * g_mean;
    CHECK(std::abs(r_mean) <= 0.02);
    CHECK(std::abs(g_mean) <= 0.02);
    CHECK(g_var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("distinct classes decorrelate; same class couples exactly") {
    // correlation of the primitive values of two distinct wigner classes
    const int trials = 10000;
    double sum_xy = 0.0;
    for (int t = 0; t < trials; ++t) {
        const double x = sample_entry_value(EntryDist::rademacher, rng::entry_stream(5, t, 1));
        const double y = sample_entry_value(EntryDist::rademacher, rng::entry_stream(5, t, 2));
        sum_xy += x * y;
    }
    CHECK(std::abs(sum_xy / trials) <= 0.05);
}

TEST_CASE("json and shorthand round trips") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::slow_band;
    spec.beta = 0.7;
    spec.n = 256;
    spec.seed = 99;
    spec.entry_dist = EntryDist::gaussian;
    const EnsembleSpec back = EnsembleSpec::from_json(spec.to_json());
    CHECK(back.kind == spec.kind);
    CHECK(back.beta == spec.beta);
    CHECK(back.n == spec.n);
    CHECK(back.seed == spec.seed);
    CHECK(back.entry_dist == spec.entry_dist);

    const EnsembleSpec wig = EnsembleSpec::parse("wigner");
    CHECK(wig.kind == EnsembleKind::weighted);
    CHECK(wig.weight.eval(0.5) == 1.0);
    CHECK(EnsembleSpec::parse("band:0.25").rho == 0.25);
    CHECK(EnsembleSpec::parse("periodic:0.4").kind == EnsembleKind::periodic_band);
    CHECK(EnsembleSpec::parse("slowband:0.7").beta == 0.7);
    CHECK(EnsembleSpec::parse("block-minus").block_mode == BlockMode::minus);
    CHECK(EnsembleSpec::parse("weighted:band:0.3").kind == EnsembleKind::weighted);
    CHECK(EnsembleSpec::parse("{\"kind\":\"band\",\"rho\":0.2,\"n\":16}").rho == 0.2);
    CHECK_THROWS_AS(EnsembleSpec::parse("circulant:0.2"), std::invalid_argument);
    CHECK_THROWS_AS(EnsembleSpec::parse("band:x"), std::invalid_argument);

    CHECK(EnsembleSpec::parse("band:0.25").theory_weight().has_value());
    CHECK_FALSE(EnsembleSpec::parse("slowband:0.7").theory_weight().has_value());
}
