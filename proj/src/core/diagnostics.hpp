// Norms, decay-rate fitting, the time-averaged curvature bound R2, and the
// runtime energy-inequality monitor.
#pragma once

#include <vector>

#include "grid.hpp"
#include "trajectory.hpp"

namespace nudgectl {

// Trapezoid-quadrature L2 norm.
double l2_norm(const Field& u);

// L2 norm of the discrete derivative.
double h1_seminorm(const Field& u);

// sqrt( (1/L^2) int u^2 + int u_x^2 ).
double h1_norm(const Field& u);

double uxx_l2_norm(const Field& u);

struct DecayFit {
    double rate = 0.0;
    double r_squared = 0.0;
    std::size_t n_used = 0;
    double t_first = 0.0;
    double t_last = 0.0;
};

// Least-squares slope of log(values) over the window [w0, w1]. The window is
// truncated before the first non-positive value; fewer than 10 remaining
// samples is an error.
DecayFit fit_decay_rate(const std::vector<double>& t, const std::vector<double>& values, double w0,
                        double w1);

struct AttractorBound {
    double r2 = 0.0;     // sqrt of the time-averaged ||u_xx||^2 after burn-in
    double drift = 0.0;  // relative difference, last-quarter average vs full window
};

AttractorBound estimate_attractor_bound(const Trajectory& traj, double burn_in);

// Residuals of the controlled-KSE energy inequality
//   1/2 d/dt ||u||^2 + (3/4 nu - 1/4 mu c h^4) ||u_xx||^2 <= (1/nu - mu/4) ||u||^2
// per interior sample (centered differencing of ||u||^2). Nonpositive (within
// discretization slack) when the zero-reference conditions hold.
std::vector<double> energy_inequality_residuals(const Trajectory& traj, double nu, double mu,
                                                double h, double c);

}  // namespace nudgectl
