#include "specmom/weights.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace specmom {

double StepFunction::operator()(double t) const {
    std::size_t i = 0;
    while (i < knots.size() && t >= knots[i]) ++i;
    return values[i];
}

double StepFunction::antiderivative(double t) const {
    t = std::clamp(t, 0.0, 1.0);
    double acc = 0.0;
    double left = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double right = i < knots.size() ? knots[i] : 1.0;
        if (t <= right) return acc + values[i] * (t - left);
        acc += values[i] * (right - left);
        left = right;
    }
    return acc;
}

double StepFunction::antiderivative_integral() const {
    // P is piecewise linear; integrate it segment by segment.
    double total = 0.0;
    double left = 0.0;
    double p_left = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double right = i < knots.size() ? knots[i] : 1.0;
        const double len = right - left;
        total += p_left * len + values[i] * len * len / 2.0;
        p_left += values[i] * len;
        left = right;
    }
    return total;
}

namespace {

StepFunction validated_step(std::vector<double> knots, std::vector<double> values) {
    if (values.size() != knots.size() + 1)
        throw std::invalid_argument("StepFunction: values must have one more entry than knots");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (knots[i] <= 0.0 || knots[i] >= 1.0) throw std::invalid_argument("StepFunction: knots must lie in (0,1)");
        if (i > 0 && knots[i] <= knots[i - 1]) throw std::invalid_argument("StepFunction: knots must increase");
    }
    return StepFunction{std::move(knots), std::move(values)};
}

}  // namespace

WeightFn::WeightFn(Kind kind, double rho, StepFunction squared)
    : kind_(kind), rho_(rho), squared_(std::move(squared)) {}

WeightFn WeightFn::constant(double c) {
    return WeightFn(Kind::constant, c, StepFunction{{}, {c * c}});
}

WeightFn WeightFn::band(double rho) {
    if (rho < 0.0 || rho > 1.0) throw std::invalid_argument("WeightFn::band: rho must lie in [0,1]");
    StepFunction sq = rho <= 0.0  ? StepFunction{{}, {0.0}}
                      : rho >= 1.0 ? StepFunction{{}, {1.0}}
                                   : StepFunction{{rho}, {1.0, 0.0}};
    return WeightFn(Kind::band, rho, std::move(sq));
}

WeightFn WeightFn::periodic_band(double rho) {
    if (rho < 0.0 || rho > 1.0) throw std::invalid_argument("WeightFn::periodic_band: rho must lie in [0,1]");
    StepFunction sq = rho <= 0.0   ? StepFunction{{}, {0.0}}
                      : rho >= 0.5 ? StepFunction{{}, {1.0}}
                                   : StepFunction{{rho, 1.0 - rho}, {1.0, 0.0, 1.0}};
    return WeightFn(Kind::periodic_band, rho, std::move(sq));
}

WeightFn WeightFn::piecewise(std::vector<double> breakpoints, std::vector<double> values) {
    std::vector<double> squared(values.size());
    std::transform(values.begin(), values.end(), squared.begin(), [](double v) { return v * v; });
    StepFunction sq = validated_step(breakpoints, std::move(squared));
    WeightFn w(Kind::piecewise_constant, 0.0, std::move(sq));
    w.pieces_ = std::move(values);
    w.breaks_ = std::move(breakpoints);
    return w;
}

double WeightFn::eval(double t) const {
    switch (kind_) {
        case Kind::constant:
            return rho_;
        case Kind::band:
            return t <= rho_ ? 1.0 : 0.0;
        case Kind::periodic_band:
            return (t <= rho_ || t >= 1.0 - rho_) ? 1.0 : 0.0;
        case Kind::piecewise_constant: {
            std::size_t i = 0;
            while (i < breaks_.size() && t >= breaks_[i]) ++i;
            return pieces_[i];
        }
    }
    return 0.0;
}

double WeightFn::eval_squared(double t) const {
    const double v = eval(t);
    return v * v;
}

double WeightFn::sup_abs() const {
    switch (kind_) {
        case Kind::constant:
            return std::abs(rho_);
        case Kind::band:
        case Kind::periodic_band:
            return 1.0;
        case Kind::piecewise_constant: {
            double m = 0.0;
            for (double v : pieces_) m = std::max(m, std::abs(v));
            return m;
        }
    }
    return 0.0;
}

std::string WeightFn::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::constant:
            os << "constant:" << rho_;
            break;
        case Kind::band:
            os << "band:" << rho_;
            break;
        case Kind::periodic_band:
            os << "periodic:" << rho_;
            break;
        case Kind::piecewise_constant:
            os << "piecewise[" << pieces_.size() << " pieces]";
            break;
    }
    return os.str();
}

double phi(const WeightFn& w, double x, int grid_n) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("phi: x must lie in [0,1]");
    if (grid_n < 64) throw std::invalid_argument("phi: grid_n must be >= 64");
    double acc = 0.0;
    const double h = 1.0 / grid_n;
    for (int j = 0; j < grid_n; ++j) {
        const double y = (j + 0.5) * h;
        acc += w.eval_squared(std::abs(x - y));
    }
    return acc * h;
}

double phi0(const WeightFn& w, int grid_n) {
    if (grid_n < 64) throw std::invalid_argument("phi0: grid_n must be >= 64");
    // Double midpoint sum; alpha^2(|x-y|) depends on |i-j| only, so tally
    // each lag once with its multiplicity.
    const double h = 1.0 / grid_n;
    double acc = static_cast<double>(grid_n) * w.eval_squared(0.0);
    for (int d = 1; d < grid_n; ++d) acc += 2.0 * (grid_n - d) * w.eval_squared(d * h);
    return acc * h * h;
}

PhiReport is_phi_constant(const WeightFn& w, double tol, int grid_n) {
    if (tol <= 0.0) throw std::invalid_argument("is_phi_constant: tol must be positive");
    PhiReport report;
    report.grid_n = grid_n;
    report.phi_values.resize(grid_n);
    for (int i = 0; i < grid_n; ++i) report.phi_values[i] = phi(w, (i + 0.5) / grid_n, grid_n);
    report.phi0 = report.phi_values.mean();
    report.max_deviation = (report.phi_values - report.phi0).abs().maxCoeff();
    report.constant_verdict = report.max_deviation <= tol;
    return report;
}

double phi_exact(const WeightFn& w, double x) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("phi_exact: x must lie in [0,1]");
    const StepFunction& sq = w.squared_step();
    return sq.antiderivative(x) + sq.antiderivative(1.0 - x);
}

double phi0_exact(const WeightFn& w) {
    return 2.0 * w.squared_step().antiderivative_integral();
}

WeightFn parse_weight_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string tail = colon == std::string::npos ? std::string() : spec.substr(colon + 1);

    auto parse_param = [&](const char* what) {
        if (tail.empty()) throw std::invalid_argument(std::string("weight spec: missing parameter for ") + what);
        std::size_t pos = 0;
        const double v = std::stod(tail, &pos);
        if (pos != tail.size()) throw std::invalid_argument("weight spec: malformed parameter '" + tail + "'");
        return v;
    };

    if (head == "constant") return WeightFn::constant(parse_param("constant"));
    if (head == "band") return WeightFn::band(parse_param("band"));
    if (head == "periodic") return WeightFn::periodic_band(parse_param("periodic"));
    if (head == "table") {
        std::ifstream in(tail);
        if (!in) throw std::invalid_argument("weight spec: cannot open table file '" + tail + "'");
        std::vector<double> ts, vs;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            double t, v;
            if (!(ls >> t >> v)) throw std::invalid_argument("weight table: malformed line '" + line + "'");
            ts.push_back(t);
            vs.push_back(v);
        }
        if (ts.empty() || ts.front() != 0.0)
            throw std::invalid_argument("weight table: first line must start at t = 0");
        return WeightFn::piecewise(std::vector<double>(ts.begin() + 1, ts.end()), std::move(vs));
    }
    throw std::invalid_argument("weight spec: unknown kind '" + head + "' (expected constant|band|periodic|table)");
}

}  // namespace specmom
