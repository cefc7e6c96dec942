#include "specmom/ensembles.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace specmom {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

void EnsembleSpec::validate() const {
    if (n < 2) throw std::invalid_argument("EnsembleSpec: n must be >= 2");
    if (kind == EnsembleKind::band || kind == EnsembleKind::periodic_band) {
        if (rho < 0.0 || rho > 1.0) throw std::invalid_argument("EnsembleSpec: rho must lie in [0,1]");
    }
    if (kind == EnsembleKind::slow_band) {
        if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("EnsembleSpec: beta must lie in (0,1)");
        if (block_mode != BlockMode::none)
            throw std::invalid_argument("EnsembleSpec: block mode is not defined for slow_band");
    }
    if (block_mode != BlockMode::none && n % 2 != 0)
        throw std::invalid_argument("EnsembleSpec: block ensembles need an even total dimension");
}

int EnsembleSpec::band_width() const {
    // Guard against pow() landing a hair under an exact integer power.
    return std::max(1, static_cast<int>(std::floor(std::pow(static_cast<double>(n), beta) + 1e-9)));
}

std::optional<WeightFn> EnsembleSpec::theory_weight() const {
    switch (kind) {
        case EnsembleKind::weighted:
            return weight;
        case EnsembleKind::band:
            return WeightFn::band(rho);
        case EnsembleKind::periodic_band:
            return WeightFn::periodic_band(rho);
        case EnsembleKind::slow_band:
            return std::nullopt;
    }
    return std::nullopt;
}

EnsembleSpec EnsembleSpec::wigner(int n, std::uint64_t seed) {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::weighted;
    spec.weight = WeightFn::constant(1.0);
    spec.n = n;
    spec.seed = seed;
    return spec;
}

const char* to_string(EnsembleKind kind) {
    switch (kind) {
        case EnsembleKind::weighted: return "weighted";
        case EnsembleKind::periodic_band: return "periodic_band";
        case EnsembleKind::band: return "band";
        case EnsembleKind::slow_band: return "slow_band";
    }
    return "?";
}

const char* to_string(BlockMode mode) {
    switch (mode) {
        case BlockMode::none: return "none";
        case BlockMode::plus: return "plus";
        case BlockMode::minus: return "minus";
    }
    return "?";
}

const char* to_string(EntryDist dist) {
    return dist == EntryDist::rademacher ? "rademacher" : "gaussian";
}

std::string EnsembleSpec::to_json() const {
    nlohmann::json j;
    j["kind"] = to_string(kind);
    j["rho"] = rho;
    j["beta"] = beta;
    j["block_mode"] = specmom::to_string(block_mode);
    j["n"] = n;
    j["dist"] = specmom::to_string(entry_dist);
    j["seed"] = seed;
    if (kind == EnsembleKind::weighted) j["weight"] = weight.describe();
    return j.dump();
}

EnsembleSpec EnsembleSpec::from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    EnsembleSpec spec;
    const std::string kind = j.value("kind", "weighted");
    if (kind == "weighted" || kind == "wigner")
        spec.kind = EnsembleKind::weighted;
    else if (kind == "band")
        spec.kind = EnsembleKind::band;
    else if (kind == "periodic_band" || kind == "periodic")
        spec.kind = EnsembleKind::periodic_band;
    else if (kind == "slow_band" || kind == "slowband")
        spec.kind = EnsembleKind::slow_band;
    else
        throw std::invalid_argument("ensemble json: unknown kind '" + kind + "'");

    spec.rho = j.value("rho", 0.0);
    spec.beta = j.value("beta", 0.0);
    spec.n = j.value("n", 0);
    spec.seed = j.value("seed", std::uint64_t{1});
    if (j.contains("weight")) spec.weight = parse_weight_spec(j["weight"].get<std::string>());

    const std::string mode = j.value("block_mode", "none");
    if (mode == "none")
        spec.block_mode = BlockMode::none;
    else if (mode == "plus")
        spec.block_mode = BlockMode::plus;
    else if (mode == "minus")
        spec.block_mode = BlockMode::minus;
    else
        throw std::invalid_argument("ensemble json: unknown block_mode '" + mode + "'");

    const std::string dist = j.value("dist", "rademacher");
    if (dist == "rademacher")
        spec.entry_dist = EntryDist::rademacher;
    else if (dist == "gaussian")
        spec.entry_dist = EntryDist::gaussian;
    else
        throw std::invalid_argument("ensemble json: unknown dist '" + dist + "'");
    return spec;
}

EnsembleSpec EnsembleSpec::parse(const std::string& text) {
    if (!text.empty() && text[0] == '{') return from_json(text);
    if (!text.empty() && text[0] == '@') {
        std::ifstream in(text.substr(1));
        if (!in) throw std::invalid_argument("ensemble spec: cannot open '" + text.substr(1) + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        return from_json(buf.str());
    }

    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string tail = colon == std::string::npos ? std::string() : text.substr(colon + 1);
    auto param = [&](const char* what) {
        if (tail.empty()) throw std::invalid_argument(std::string("ensemble spec: missing parameter for ") + what);
        std::size_t pos = 0;
        const double v = std::stod(tail, &pos);
        if (pos != tail.size()) throw std::invalid_argument("ensemble spec: malformed parameter '" + tail + "'");
        return v;
    };

    EnsembleSpec spec;
    if (head == "wigner") {
        spec.kind = EnsembleKind::weighted;
        spec.weight = WeightFn::constant(1.0);
    } else if (head == "band") {
        spec.kind = EnsembleKind::band;
        spec.rho = param("band");
    } else if (head == "periodic") {
        spec.kind = EnsembleKind::periodic_band;
        spec.rho = param("periodic");
    } else if (head == "slowband") {
        spec.kind = EnsembleKind::slow_band;
        spec.beta = param("slowband");
    } else if (head == "block" || head == "block-plus") {
        spec.kind = EnsembleKind::weighted;
        spec.weight = WeightFn::constant(1.0);
        spec.block_mode = BlockMode::plus;
    } else if (head == "block-minus") {
        spec.kind = EnsembleKind::weighted;
        spec.weight = WeightFn::constant(1.0);
        spec.block_mode = BlockMode::minus;
    } else if (head == "weighted") {
        spec.kind = EnsembleKind::weighted;
        spec.weight = parse_weight_spec(tail);
    } else {
        throw std::invalid_argument("ensemble spec: unknown kind '" + head +
                                    "' (expected wigner|band|periodic|slowband|block|block-minus|weighted)");
    }
    return spec;
}

double sample_entry_value(EntryDist dist, rng::Stream stream) {
    if (dist == EntryDist::rademacher) return (rng::bits(stream, 0) >> 63) ? 1.0 : -1.0;
    const double u1 = rng::uniform01(stream, 0);
    const double u2 = rng::uniform01(stream, 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

MatrixSample sample_matrix(const EnsembleSpec& spec, std::int64_t trial) {
    spec.validate();
    const int n = spec.n;

    const EquivalenceRelation rel = spec.block_mode == BlockMode::none
                                        ? wigner_relation(n)
                                        : block_relation(n / 2, spec.block_mode == BlockMode::minus);

    const double norm = spec.kind == EnsembleKind::slow_band
                            ? 1.0 / std::sqrt(2.0 * spec.band_width())
                            : 1.0 / std::sqrt(static_cast<double>(n));
    const int b = spec.kind == EnsembleKind::slow_band ? spec.band_width() : 0;

    auto weight_factor = [&](int i, int j) -> double {
        const int d = std::abs(i - j);
        switch (spec.kind) {
            case EnsembleKind::weighted:
                return spec.weight.eval(static_cast<double>(d) / n);
            case EnsembleKind::periodic_band:
                return std::min(d, n - d) <= spec.rho * n ? 1.0 : 0.0;
            case EnsembleKind::band:
                return d <= spec.rho * n ? 1.0 : 0.0;
            case EnsembleKind::slow_band:
                return d <= b ? 1.0 : 0.0;
        }
        return 0.0;
    };

    MatrixSample sample;
    sample.n = n;
    sample.entries = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double wf = weight_factor(i, j);
            if (wf == 0.0) continue;
            const auto cls = rel.class_of(i, j);
            const double x = sample_entry_value(
                spec.entry_dist, rng::entry_stream(spec.seed, static_cast<std::uint64_t>(trial),
                                                   static_cast<std::uint64_t>(cls.id)));
            const double value = norm * wf * cls.sign * x;
            sample.entries(i, j) = value;
            sample.entries(j, i) = value;
        }
    return sample;
}

}  // namespace specmom
