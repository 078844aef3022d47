#include "grid.hpp"

#include <cmath>

#include "fft.hpp"

namespace nudgectl {

const char* boundary_name(Boundary b) {
    switch (b) {
        case Boundary::periodic: return "periodic";
        case Boundary::neumann: return "neumann";
        case Boundary::dirichlet: return "dirichlet";
    }
    return "?";
}

Grid1D::Grid1D(double L, int n_points, Boundary b) : length(L), n(n_points), boundary(b) {
    if (!(L > 0.0)) throw std::invalid_argument("Grid1D: length must be positive");
    if (n_points < 2) throw std::invalid_argument("Grid1D: too few points");
    if (!(dx() > 0.0)) throw std::invalid_argument("Grid1D: spacing must be positive");
}

Field Field::from_function(const Grid1D& g, const std::function<double(double)>& f) {
    Field out(g);
    for (int i = 0; i < g.n; ++i) out.values[i] = f(g.x(i));
    return out;
}

void Field::require_finite(const char* who) const {
    for (int i = 0; i < size(); ++i) {
        if (!std::isfinite(values[i]))
            throw std::runtime_error(std::string(who) + ": non-finite value at index " +
                                     std::to_string(i) + " (x=" + std::to_string(grid.x(i)) + ")");
    }
}

double trapezoid_integral(const Field& f) {
    const double h = f.grid.dx();
    double sum = 0.0;
    if (f.grid.is_periodic()) {
        for (double v : f.values) sum += v;
        return sum * h;
    }
    const int n = f.size();
    sum = 0.5 * (f.values[0] + f.values[n - 1]);
    for (int i = 1; i < n - 1; ++i) sum += f.values[i];
    return sum * h;
}

double trapezoid_mean(const Field& f) {
    return trapezoid_integral(f) / f.grid.length;
}

double max_abs(const Field& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

namespace {

Field spectral_derivative(const Field& f, int order) {
    const int n = f.grid.n;
    const Fft& fft = shared_fft(n);
    SpectralState u_hat = fft.forward_real(f.values);
    for (int j = 0; j < n; ++j) {
        double kap = Fft::kappa(j, n, f.grid.length);
        Complex factor = (order == 1) ? Complex(0.0, kap) : Complex(-kap * kap, 0.0);
        u_hat[j] *= factor;
    }
    Field out(f.grid);
    out.values = fft.inverse_real(u_hat);
    return out;
}

Field central_derivative(const Field& f) {
    const int n = f.size();
    const double h = f.grid.dx();
    Field out(f.grid);
    for (int i = 1; i < n - 1; ++i) out.values[i] = (f.values[i + 1] - f.values[i - 1]) / (2 * h);
    out.values[0] = (-3 * f.values[0] + 4 * f.values[1] - f.values[2]) / (2 * h);
    out.values[n - 1] = (3 * f.values[n - 1] - 4 * f.values[n - 2] + f.values[n - 3]) / (2 * h);
    return out;
}

}  // namespace

Field derivative(const Field& f) {
    if (f.size() < 3) throw std::invalid_argument("derivative: need at least 3 points");
    return f.grid.is_periodic() ? spectral_derivative(f, 1) : central_derivative(f);
}

Field second_derivative(const Field& f) {
    if (f.size() < 3) throw std::invalid_argument("second_derivative: need at least 3 points");
    return f.grid.is_periodic() ? spectral_derivative(f, 2) : central_derivative(central_derivative(f));
}

}  // namespace nudgectl
