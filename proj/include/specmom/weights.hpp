// Weight functions alpha : [0,1] -> R and the kernel profile
//
//   phi(x)  = int_0^1 alpha^2(|x - y|) dy,      phi0 = int_0^1 phi(x) dx.
//
// Every supported weight is piecewise constant, so alpha^2 has an exact
// piecewise-linear antiderivative P; that gives the closed forms
//
//   phi(x) = P(x) + P(1 - x),   phi0 = 2 * int_0^1 P(x) dx,
//
// used by the tree-integral kernels.  The phi / phi0 operations below use
// the plain midpoint Riemann sum instead (error O(1/grid_n) for indicator
// weights); they are what the `phi` CLI reports and what the constancy
// verdict is based on.

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace specmom {

// Right-continuous piecewise-constant function on [0,1].
struct StepFunction {
    std::vector<double> knots;   // interior breakpoints, strictly increasing
    std::vector<double> values;  // size knots.size() + 1

    double operator()(double t) const;
    double antiderivative(double t) const;    // P(t) = int_0^t, t clamped to [0,1]
    double antiderivative_integral() const;   // int_0^1 P(t) dt
};

class WeightFn {
public:
    enum class Kind { constant, band, periodic_band, piecewise_constant };

    static WeightFn constant(double c);
    static WeightFn band(double rho);           // alpha = 1 on [0, rho]
    static WeightFn periodic_band(double rho);  // alpha = 1 on [0, rho] and [1-rho, 1]
    static WeightFn piecewise(std::vector<double> breakpoints, std::vector<double> values);

    Kind kind() const { return kind_; }
    double rho() const { return rho_; }

    double eval(double t) const;  // t in [0,1]; indicator supports are closed sets
    double eval_squared(double t) const;
    double sup_abs() const;  // bound A with |alpha| <= A

    // alpha^2 as a step function (boundary points of indicator supports are
    // measure-zero and irrelevant here).
    const StepFunction& squared_step() const { return squared_; }

    std::string describe() const;

private:
    WeightFn(Kind kind, double rho, StepFunction squared);

    Kind kind_;
    double rho_ = 0.0;  // constant value for Kind::constant, rho for the bands
    StepFunction squared_;
    std::vector<double> breaks_;  // piecewise variant only
    std::vector<double> pieces_;
};

struct PhiReport {
    int grid_n = 0;
    Eigen::ArrayXd phi_values;  // phi at the grid midpoints
    double phi0 = 0.0;          // mean of phi_values
    double max_deviation = 0.0;
    bool constant_verdict = false;
};

// Midpoint Riemann sum of alpha^2(|x - y|) over grid_n cells in y.
double phi(const WeightFn& w, double x, int grid_n);

// Double midpoint sum, symmetric in the two grids.
double phi0(const WeightFn& w, int grid_n);

// Verdict on phi == phi0 over the midpoint grid.
PhiReport is_phi_constant(const WeightFn& w, double tol, int grid_n = 2048);

// Closed forms (exact for the piecewise-constant weight families).
double phi_exact(const WeightFn& w, double x);
double phi0_exact(const WeightFn& w);

// Weight spec grammar: "constant:1.0", "band:0.25", "periodic:0.25",
// "table:<path>".  Table files hold lines "t value" with ascending t
// starting at 0; each value applies on [t_i, t_{i+1}).
WeightFn parse_weight_spec(const std::string& spec);

}  // namespace specmom
