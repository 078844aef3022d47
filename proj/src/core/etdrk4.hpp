// Fourth-order exponential time differencing Runge-Kutta for diagonal stiff
// linear parts. The phi-function combinations are evaluated by averaging over
// a complex contour around each symbol*dt value, which keeps the removable
// singularity at z = 0 harmless.
#pragma once

#include <functional>
#include <vector>

#include "fft.hpp"

namespace nudgectl {

struct EtdrkCoefficients {
    double dt = 0.0;
    int contour_points = 32;
    double contour_radius = 1.0;
    // All coefficients are real because the linear symbols are real.
    std::vector<double> e_half;  // exp(L dt / 2)
    std::vector<double> e_full;  // exp(L dt)
    std::vector<double> q;       // dt phi_1(L dt / 2) / 2 stage weight
    std::vector<double> f1;
    std::vector<double> f2;
    std::vector<double> f3;

    std::size_t size() const { return e_full.size(); }
};

EtdrkCoefficients etdrk4_coefficients(const std::vector<double>& symbol, double dt,
                                      int contour_points = 32, double contour_radius = 1.0);

using SpectralOp = std::function<SpectralState(const SpectralState&, double)>;

// One step from time t. With a vanishing nonlinearity the update is exactly
// u_hat * e_full.
SpectralState etdrk4_step(const SpectralState& u_hat, const EtdrkCoefficients& c,
                          const SpectralOp& nonlinear, double t);

}  // namespace nudgectl
